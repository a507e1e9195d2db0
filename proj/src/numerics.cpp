#include "slc/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace slc {

namespace {

// Sort permutation: descending real part, ties by descending imaginary part.
std::vector<Index> sort_order(const ComplexVector& ev) {
  std::vector<Index> idx(static_cast<std::size_t>(ev.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    if (ev[a].real() != ev[b].real()) return ev[a].real() > ev[b].real();
    return ev[a].imag() > ev[b].imag();
  });
  return idx;
}

// Unit norm, first non-negligible component rotated to the positive real axis.
void normalize_phase(Eigen::Ref<ComplexVector> v, double pos_min) {
  double nrm = v.norm();
  if (nrm > 0) v /= nrm;
  for (Index i = 0; i < v.size(); ++i) {
    double a = std::abs(v[i]);
    if (a > pos_min) {
      v *= std::conj(v[i]) / a;
      break;
    }
  }
}

struct EigSide {
  ComplexVector values;
  ComplexMatrix vectors;
};

EigSide decompose(const Matrix& m, const Tolerances& tol) {
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw NumericalFailureError("eigensolver did not converge");
  EigSide side;
  const auto order = sort_order(solver.eigenvalues());
  side.values.resize(m.rows());
  side.vectors.resize(m.rows(), m.cols());
  for (Index k = 0; k < m.rows(); ++k) {
    side.values[k] = solver.eigenvalues()[order[static_cast<std::size_t>(k)]];
    side.vectors.col(k) = solver.eigenvectors().col(order[static_cast<std::size_t>(k)]);
    normalize_phase(side.vectors.col(k), tol.pos_min);
  }
  return side;
}

}  // namespace

Index Spectrum::closest(Complex z) const {
  Index best = 0;
  double d = std::abs(eigenvalues[0] - z);
  for (Index i = 1; i < eigenvalues.size(); ++i) {
    double di = std::abs(eigenvalues[i] - z);
    if (di < d) {
      d = di;
      best = i;
    }
  }
  return best;
}

Index Spectrum::dominant() const {
  Index best = 0;
  double r = std::abs(eigenvalues[0]);
  for (Index i = 1; i < eigenvalues.size(); ++i) {
    double ri = std::abs(eigenvalues[i]);
    if (ri > r) {
      r = ri;
      best = i;
    }
  }
  return best;
}

Spectrum spectrum(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  require_square(m);
  require_finite(m);
  const Matrix a = m;
  const double scale = inf_norm(a);

  EigSide right = decompose(a, tol);
  EigSide left = decompose(a.transpose(), tol);

  Spectrum s;
  s.eigenvalues = right.values;
  s.right_vectors = right.vectors;
  // Λ(Mᵀ) = Λ(M); identical sort order pairs the two sides. Within a
  // numerically coincident cluster any pairing is equally valid.
  s.left_vectors = left.vectors;

  s.spectral_radius = s.eigenvalues.cwiseAbs().maxCoeff();
  if (s.size() >= 2) {
    Vector moduli = s.eigenvalues.cwiseAbs();
    std::sort(moduli.data(), moduli.data() + moduli.size(), std::greater<double>());
    s.dominance_gap = moduli[0] - moduli[1];
  } else {
    s.dominance_gap = s.spectral_radius;
  }

  const double resid_bound = tol.tol_resid * std::max(scale, 1e-300);
  for (Index k = 0; k < s.size(); ++k) {
    double r_right = (a * s.right_vectors.col(k) - s.eigenvalues[k] * s.right_vectors.col(k)).norm();
    double r_left =
        (a.transpose() * s.left_vectors.col(k) - left.values[k] * s.left_vectors.col(k)).norm();
    if (r_right > resid_bound || r_left > resid_bound)
      throw NumericalFailureError("eigenpair residual above tolerance");
  }
  return s;
}

Matrix matrix_exponential(const Eigen::Ref<const Matrix>& m, double t) {
  require_square(m);
  require_finite(m);
  if (!std::isfinite(t)) throw InvalidInputError("time must be finite");
  const Index n = m.rows();
  Matrix a = m * t;

  // Higham scaling-and-squaring, fixed degree-13 Padé approximant.
  static const double theta13 = 5.371920351148152;
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const double nrm = inf_norm(a);
  int squarings = 0;
  if (nrm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    if (squarings > 1060) throw OverflowError("matrix exponential argument too large");
    a /= std::pow(2.0, squarings);
  }

  const Matrix ident = Matrix::Identity(n, n);
  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a4 * a2;
  const Matrix u =
      a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
           b[1] * ident);
  const Matrix v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;

  Eigen::PartialPivLU<Matrix> lu(v - u);
  Matrix r = lu.solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  if (!r.allFinite()) throw OverflowError("matrix exponential overflow");
  return r;
}

RankReport corank(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  require_square(m);
  require_finite(m);
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector sv = svd.singularValues();
  RankReport report;
  report.zero_threshold = tol.tol_zero * inf_norm(m);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv[i] <= report.zero_threshold)
      ++report.corank;
    else
      ++report.numerical_rank;
  }
  return report;
}

Index corank_shifted(const Eigen::Ref<const Matrix>& m, Complex shift, const Tolerances& tol) {
  require_square(m);
  ComplexMatrix shifted = m.cast<Complex>();
  shifted.diagonal().array() -= shift;
  Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
  const Vector sv = svd.singularValues();
  const double threshold = tol.tol_zero * (inf_norm(m) + std::abs(shift));
  Index corank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] <= threshold) ++corank;
  return corank;
}

DefinitenessReport definiteness(const Eigen::Ref<const Matrix>& msym, const Tolerances& tol) {
  require_square(msym);
  require_finite(msym);
  const double scale = inf_norm(msym);
  if ((msym - msym.transpose()).cwiseAbs().maxCoeff() > tol.tol_sym * std::max(scale, 1.0))
    throw NotSymmetricError("definiteness requires a symmetric matrix");

  Eigen::SelfAdjointEigenSolver<Matrix> solver((msym + msym.transpose()) / 2.0);
  if (solver.info() != Eigen::Success) throw NumericalFailureError("symmetric eigensolver failed");

  DefinitenessReport report;
  report.eigenvalues = solver.eigenvalues();
  report.min_eigenvalue = report.eigenvalues[0];
  report.zero_threshold = tol.tol_zero * scale;
  if (report.min_eigenvalue > report.zero_threshold) {
    report.verdict = Definiteness::PositiveDefinite;
    report.corank = 0;
    return report;
  }
  if (report.min_eigenvalue >= -report.zero_threshold) {
    report.verdict = Definiteness::PositiveSemidefinite;
    for (Index i = 0; i < report.eigenvalues.size(); ++i)
      if (std::abs(report.eigenvalues[i]) <= report.zero_threshold) ++report.corank;
    return report;
  }
  report.verdict = Definiteness::Indefinite;
  for (Index i = 0; i < report.eigenvalues.size(); ++i)
    if (std::abs(report.eigenvalues[i]) <= report.zero_threshold) ++report.corank;
  return report;
}

}  // namespace slc
