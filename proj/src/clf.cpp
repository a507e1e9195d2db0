#include "slc/clf.hpp"

#include "slc/classify.hpp"
#include "slc/numerics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace slc {

ProjectionBasis projection_basis(Index n) {
  if (n < 2) throw DimensionCapError("projection basis needs n >= 2");
  Vector w = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  w[0] -= 1.0;
  const Matrix reflector = Matrix::Identity(n, n) - (2.0 / w.squaredNorm()) * (w * w.transpose());
  return {reflector.bottomRows(n - 1)};
}

LmiProblem assemble_lmi(const std::vector<Matrix>& matrices, Mode mode, int order,
                        const ProjectionBasis& basis) {
  if (matrices.empty()) throw InvalidInputError("empty matrix family");
  const Index n = matrices.front().rows();
  for (const Matrix& m : matrices)
    if (m.rows() != m.cols() || m.rows() != n)
      throw InvalidInputError("family members must be square of equal dimension");
  if (order < 1) throw InvalidInputError("order must be at least 1");
  if (basis.Q.rows() != n - 1 || basis.Q.cols() != n)
    throw DimensionMismatchError("projection basis dimension mismatch");
  double lifted_dim = std::pow(static_cast<double>(n), order);
  if (lifted_dim > 64.0) throw DimensionCapError("lifted dimension exceeds 64");

  LmiProblem problem;
  problem.mode = mode;
  problem.order = order;
  problem.base_dim = n;
  problem.Qhat = basis.Q;
  for (int r = 1; r < order; ++r) problem.Qhat = kron_product(problem.Qhat, basis.Q);
  for (const Matrix& m : matrices) {
    Matrix lift = m;
    for (int r = 1; r < order; ++r)
      lift = (mode == Mode::Continuous) ? kron_sum(lift, m) : kron_product(lift, m);
    problem.lifted.push_back(std::move(lift));
  }
  double max_norm = 0.0;
  for (const Matrix& m : matrices) max_norm = std::max(max_norm, inf_norm(m));
  problem.margin_min = 1e-6 * (1.0 + max_norm);
  return problem;
}

Matrix LmiProblem::block(std::size_t k, const Eigen::Ref<const Matrix>& p) const {
  const Matrix& m = lifted.at(k);
  if (mode == Mode::Continuous) {
    const Matrix t = (Qhat * m) * p * Qhat.transpose();
    return -(t + t.transpose());
  }
  const Matrix u = Qhat * m.transpose();
  return u * p * u.transpose() - Qhat * p * Qhat.transpose();
}

Matrix LmiProblem::block_adjoint(std::size_t k, const Eigen::Ref<const Matrix>& y) const {
  const Matrix& m = lifted.at(k);
  if (mode == Mode::Continuous) {
    const Matrix t = (Qhat * m).transpose() * y * Qhat;
    return -(t + t.transpose());
  }
  const Matrix u = Qhat * m.transpose();
  return u.transpose() * y * u - Qhat.transpose() * y * Qhat;
}

namespace {

// Orthonormal basis of the symmetric matrices (diagonal units, then
// off-diagonal pairs scaled by 1/sqrt(2)).
std::vector<Matrix> symmetric_basis(Index d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d * (d + 1) / 2));
  for (Index i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = e(j, i) = s;
      basis.push_back(std::move(e));
    }
  return basis;
}

Matrix clip_min(const Matrix& sym, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((sym + sym.transpose()) / 2.0);
  return es.eigenvectors() * es.eigenvalues().cwiseMax(floor).asDiagonal() *
         es.eigenvectors().transpose();
}

Matrix clip_max(const Matrix& sym, double ceil) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((sym + sym.transpose()) / 2.0);
  return es.eigenvectors() * es.eigenvalues().cwiseMin(ceil).asDiagonal() *
         es.eigenvectors().transpose();
}

struct CandidateCheck {
  bool ok = false;
  Matrix P;
  double min_eig_P = 0.0;
  std::vector<double> block_max_eigs;
};

// Strict feasibility at any positive margin can be rescaled onto the
// required one (the constraint system is a cone in P).
CandidateCheck try_candidate(const LmiProblem& prob, const Matrix& p_raw) {
  CandidateCheck out;
  Matrix p = (p_raw + p_raw.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  double margin = es.eigenvalues()[0];
  if (!(margin > 1e-12 * std::max(p.norm(), 1.0))) return out;  // not rescalable
  for (std::size_t k = 0; k < prob.modes(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> eb(prob.block(k, p));
    margin = std::min(margin, -eb.eigenvalues()[eb.eigenvalues().size() - 1]);
    if (!(margin > 1e-12 * std::max(p.norm(), 1.0))) return out;
  }
  if (margin < prob.margin_min) p *= 1.05 * prob.margin_min / margin;

  // Re-verify from scratch at the scaled candidate.
  Eigen::SelfAdjointEigenSolver<Matrix> ep(p);
  out.min_eig_P = ep.eigenvalues()[0];
  if (!(out.min_eig_P > prob.margin_min)) return out;
  for (std::size_t k = 0; k < prob.modes(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> eb(prob.block(k, p));
    out.block_max_eigs.push_back(eb.eigenvalues()[eb.eigenvalues().size() - 1]);
    if (!(out.block_max_eigs.back() < -prob.margin_min)) return out;
  }
  out.ok = true;
  out.P = std::move(p);
  return out;
}

}  // namespace

ClfCertificate sdp_feasibility(const LmiProblem& problem, const SdpBudget& budget) {
  if (budget.max_iterations < 0) throw InvalidInputError("iteration budget must be nonnegative");
  const Index d = problem.dim();
  const std::size_t m = problem.modes();
  const double eps = problem.margin_min;

  ClfCertificate cert;
  cert.order = problem.order;
  cert.margin_min = eps;

  auto accept = [&](const Matrix& p, int iters) {
    CandidateCheck c = try_candidate(problem, p);
    if (!c.ok) return false;
    cert.status = ClfStatus::Feasible;
    cert.P = c.P;
    cert.min_eig_P = c.min_eig_P;
    cert.block_max_eigs = c.block_max_eigs;
    cert.iterations = iters;
    return true;
  };

  // The identity is the certificate for the normal/EEP (resp. ES) class;
  // costs one verification pass.
  if (accept(Matrix::Identity(d, d), 0)) return cert;

  // Precompute the least-squares operator of the affine projection:
  // (I + sum_k S_k^* S_k) x = x0 + sum_k S_k^*(y0_k) over svec coordinates.
  const auto basis = symmetric_basis(d);
  const Index nb = static_cast<Index>(basis.size());
  std::vector<std::vector<Matrix>> block_of_basis(m);
  Matrix normal_op = Matrix::Identity(nb, nb);
  for (std::size_t k = 0; k < m; ++k) {
    block_of_basis[k].reserve(static_cast<std::size_t>(nb));
    for (Index a = 0; a < nb; ++a) block_of_basis[k].push_back(problem.block(k, basis[a]));
    Matrix g(nb, problem.block_dim() * problem.block_dim());
    for (Index a = 0; a < nb; ++a)
      g.row(a) = Eigen::Map<const Vector>(block_of_basis[k][a].data(),
                                          block_of_basis[k][a].size());
    normal_op += g * g.transpose();
  }
  Eigen::LLT<Matrix> llt(normal_op);
  if (llt.info() != Eigen::Success)
    throw NumericalFailureError("projection normal operator not positive definite");

  auto project_affine = [&](const Matrix& p0, const std::vector<Matrix>& y0, Matrix& p_out,
                            std::vector<Matrix>& y_out) {
    Vector rhs(nb);
    for (Index a = 0; a < nb; ++a) {
      double v = (basis[a].array() * p0.array()).sum();
      for (std::size_t k = 0; k < m; ++k)
        v += (block_of_basis[k][a].array() * y0[k].array()).sum();
      rhs[a] = v;
    }
    const Vector x = llt.solve(rhs);
    p_out = Matrix::Zero(d, d);
    for (Index a = 0; a < nb; ++a) p_out += x[a] * basis[a];
    y_out.resize(m);
    for (std::size_t k = 0; k < m; ++k) y_out[k] = problem.block(k, p_out);
  };

  // Douglas-Rachford iteration on the pair (affine subspace, shifted cones).
  Matrix zp = Matrix::Identity(d, d);
  std::vector<Matrix> zy(m);
  for (std::size_t k = 0; k < m; ++k) zy[k] = problem.block(k, zp);

  Matrix dp;
  std::vector<Matrix> dy;
  for (int it = 1; it <= budget.max_iterations; ++it) {
    project_affine(zp, zy, dp, dy);
    if (accept(dp, it)) return cert;

    const Matrix rp = 2.0 * dp - zp;
    const Matrix cp = clip_min(rp, eps);
    if (accept(cp, it)) return cert;

    zp += cp - dp;
    for (std::size_t k = 0; k < m; ++k) {
      const Matrix ry = 2.0 * dy[k] - zy[k];
      zy[k] += clip_max(ry, -eps) - dy[k];
    }
  }
  cert.status = ClfStatus::Unknown;
  cert.iterations = budget.max_iterations;
  return cert;
}

MarginsReport verify_certificate(const Eigen::Ref<const Matrix>& p,
                                 const std::vector<Matrix>& matrices, Mode mode, int order,
                                 const ProjectionBasis& basis) {
  const LmiProblem problem = assemble_lmi(matrices, mode, order, basis);
  if (p.rows() != problem.dim() || p.cols() != problem.dim())
    throw DimensionMismatchError("certificate dimension does not match the lifted problem");

  MarginsReport report;
  report.margin_min = problem.margin_min;
  const Matrix psym = (p + p.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> ep(psym);
  report.min_eig_P = ep.eigenvalues()[0];
  bool pass = report.min_eig_P > problem.margin_min;
  for (std::size_t k = 0; k < problem.modes(); ++k) {
    Eigen::SelfAdjointEigenSolver<Matrix> eb(problem.block(k, psym));
    report.block_max_eigs.push_back(eb.eigenvalues()[eb.eigenvalues().size() - 1]);
    pass = pass && report.block_max_eigs.back() < -problem.margin_min;
  }
  report.passes = pass;
  return report;
}

ClfCertificate clf_consensus_certificate(const std::vector<Matrix>& matrices, Mode mode,
                                         int max_order, const SdpBudget& budget,
                                         const Tolerances& tol) {
  if (matrices.empty()) throw InvalidInputError("empty matrix family");
  for (const Matrix& m : matrices) {
    const bool necessary = (mode == Mode::Continuous)
                               ? detail::continuous_consensus_core(m, tol)
                               : detail::discrete_consensus_core(m, tol);
    if (!necessary)
      throw NecessaryTestFailedError("a mode cannot reach consensus by itself");
  }

  const ProjectionBasis basis = projection_basis(matrices.front().rows());
  ClfCertificate last;
  for (int order = 1; order <= max_order; ++order) {
    const LmiProblem problem = assemble_lmi(matrices, mode, order, basis);
    last = sdp_feasibility(problem, budget);
    if (last.status == ClfStatus::Feasible) return last;
  }
  return last;
}

}  // namespace slc
