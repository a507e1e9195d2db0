#include "slc/classify.hpp"

#include "slc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slc {

namespace {

// Real part of a phase-normalized eigenvector, or nothing if it is not
// numerically real.
std::optional<Vector> real_vector(const ComplexVector& v, double imag_tol) {
  if (v.imag().cwiseAbs().maxCoeff() > imag_tol) return std::nullopt;
  Vector r = v.real();
  double nrm = r.norm();
  if (nrm > 0) r /= nrm;
  return r;
}

bool strictly_positive(const Vector& v, double pos_min) {
  return (v.array() > pos_min).all();
}

bool strictly_one_signed(const Vector& v, double pos_min) {
  return (v.array() > pos_min).all() || (v.array() < -pos_min).all();
}

// Union-find clustering of selected eigenvalues by pairwise distance.
std::vector<std::vector<Index>> cluster(const ComplexVector& ev, const std::vector<Index>& sel,
                                        double radius) {
  std::vector<std::vector<Index>> clusters;
  std::vector<bool> used(sel.size(), false);
  for (std::size_t i = 0; i < sel.size(); ++i) {
    if (used[i]) continue;
    std::vector<Index> c{sel[i]};
    used[i] = true;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < sel.size(); ++j) {
        if (used[j]) continue;
        for (Index k : c) {
          if (std::abs(ev[sel[j]] - ev[k]) <= radius) {
            c.push_back(sel[j]);
            used[j] = true;
            grew = true;
            break;
          }
        }
      }
    }
    clusters.push_back(std::move(c));
  }
  return clusters;
}

}  // namespace

PfVerdict pf_property(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  require_square(m);
  const double scale = std::max(inf_norm(m), 1e-300);
  const Spectrum s = spectrum(m, tol);
  const Index top = s.dominant();
  const Complex lambda = s.eigenvalues[top];

  PfVerdict v;
  v.rho = s.spectral_radius;
  v.dominance_gap = s.dominance_gap;

  if (std::abs(lambda.imag()) > tol.gap_min * scale || lambda.real() <= tol.gap_min * scale)
    v.reasons.push_back("rho-not-real-positive");
  if (v.dominance_gap < tol.gap_min * scale)
    v.reasons.push_back("rho-not-simple-strictly-dominant");

  auto right = real_vector(s.right_vectors.col(top), tol.pos_min);
  if (!right || !strictly_positive(*right, tol.pos_min)) {
    v.reasons.push_back("right-vector-not-positive");
  } else {
    v.right_vector = right;
  }
  v.left_vector = real_vector(s.left_vectors.col(top), tol.pos_min);

  v.holds = v.reasons.empty();
  return v;
}

EpVerdict is_eventually_positive(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  require_square(m);
  EpVerdict verdict;
  verdict.holds = pf_property(m, tol).holds && pf_property(m.transpose(), tol).holds;

  // Direct confirmation: scan normalized powers for two consecutive positive
  // ones. Reported when found; the eigen test above stays authoritative.
  const Index n = m.rows();
  Matrix p = Matrix::Identity(n, n);
  bool prev_positive = false;
  for (int t = 1; t <= tol.power_t_max; ++t) {
    p = p * m;
    const double top = p.cwiseAbs().maxCoeff();
    if (top <= 0.0 || !p.allFinite()) break;
    p /= top;  // positivity is invariant under positive scaling
    const bool positive = (p.array() > 1e-12).all();
    if (positive && prev_positive) {
      verdict.power_threshold = t - 1;
      break;
    }
    prev_positive = positive;
  }
  return verdict;
}

EepVerdict is_eventually_exponentially_positive(const Eigen::Ref<const Matrix>& m,
                                                const Tolerances& tol) {
  require_square(m);
  const double scale = std::max(inf_norm(m), 1e-300);
  const Spectrum s = spectrum(m, tol);

  EepVerdict v;
  const Complex lead = s.eigenvalues[0];  // rightmost by the sort order

  // Simple and strictly dominant in real part.
  bool simple_dominant = true;
  for (Index i = 1; i < s.size(); ++i)
    if (s.eigenvalues[i].real() > lead.real() - tol.gap_min * scale) simple_dominant = false;
  if (!simple_dominant) v.reasons.push_back("rightmost-eigenvalue-not-simple-dominant");
  if (std::abs(lead.imag()) > tol.gap_min * scale) v.reasons.push_back("rightmost-eigenvalue-not-real");

  auto right = real_vector(s.right_vectors.col(0), tol.pos_min);
  auto left = real_vector(s.left_vectors.col(0), tol.pos_min);
  if (!right || !strictly_one_signed(*right, tol.pos_min))
    v.reasons.push_back("right-null-vector-not-one-signed");
  if (!left || !strictly_one_signed(*left, tol.pos_min))
    v.reasons.push_back("left-null-vector-not-one-signed");

  v.holds = v.reasons.empty();

  // Analytic shift making M + dI eventually positive, from the dominance
  // geometry: |mu + d| < lead + d for every other eigenvalue mu.
  if (v.holds) {
    const double lstar = lead.real();
    double d = 0.0;
    for (Index i = 1; i < s.size(); ++i) {
      const Complex mu = s.eigenvalues[i];
      const double denom = 2.0 * (lstar - mu.real());
      if (denom <= 0.0) continue;
      d = std::max(d, (std::norm(mu) - lstar * lstar) / denom);
    }
    d = std::max(d, -lstar) + 1.0;
    v.witness_d = d;
    Matrix shifted = m;
    shifted.diagonal().array() += d;
    v.witness_validated = is_eventually_positive(shifted, tol).holds;
  }
  return v;
}

bool is_eventually_stochastic(const Eigen::Ref<const Matrix>& w, const Tolerances& tol) {
  require_square(w);
  const Vector ones = Vector::Ones(w.rows());
  if ((w * ones - ones).norm() > tol.tol_zero * std::max(inf_norm(w), 1.0)) return false;
  return is_eventually_positive(w, tol).holds;
}

bool is_eventually_doubly_stochastic(const Eigen::Ref<const Matrix>& w, const Tolerances& tol) {
  require_square(w);
  const Vector ones = Vector::Ones(w.rows());
  if ((w.transpose() * ones - ones).norm() > tol.tol_zero * std::max(inf_norm(w), 1.0)) return false;
  return is_eventually_stochastic(w, tol);
}

bool marginal_stability(const Eigen::Ref<const Matrix>& m, Mode mode, const Tolerances& tol) {
  require_square(m);
  const double scale = inf_norm(m);
  const Spectrum s = spectrum(m, tol);

  const double band = tol.tol_zero * std::max(mode == Mode::Continuous ? scale : std::max(scale, 1.0),
                                              1e-300);
  std::vector<Index> boundary;
  for (Index i = 0; i < s.size(); ++i) {
    const Complex z = s.eigenvalues[i];
    if (mode == Mode::Continuous) {
      if (z.real() > band) return false;
      if (std::abs(z.real()) <= band) boundary.push_back(i);
    } else {
      if (std::abs(z) > 1.0 + band) return false;
      if (std::abs(std::abs(z) - 1.0) <= band) boundary.push_back(i);
    }
  }

  // Boundary eigenvalues must be semisimple: kernel dimension of M - \lambda I
  // equal to the cluster size.
  const double radius = std::max(tol.gap_min * std::max(scale, 1e-300), 2.0 * band);
  for (const auto& c : cluster(s.eigenvalues, boundary, radius)) {
    Complex center{0.0, 0.0};
    for (Index k : c) center += s.eigenvalues[k];
    center /= static_cast<double>(c.size());
    if (corank_shifted(m, center, tol) < static_cast<Index>(c.size())) return false;
  }
  return true;
}

bool is_normal(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  require_square(m);
  const double scale = inf_norm(m);
  const Matrix commutator = m * m.transpose() - m.transpose() * m;
  return inf_norm(commutator) <= tol.tol_zero * std::max(scale * scale, 1e-300);
}

DefinitenessReport symmetric_part_verdict(const Eigen::Ref<const Matrix>& l,
                                          const Tolerances& tol) {
  require_square(l);
  return definiteness((l + l.transpose()) / 2.0, tol);
}

SignedPfVerdict signed_pf(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  require_square(m);
  const double scale = std::max(inf_norm(m), 1e-300);
  const Spectrum s = spectrum(m, tol);
  const Index top = s.dominant();
  const Complex lambda = s.eigenvalues[top];

  SignedPfVerdict v;
  v.rho = s.spectral_radius;
  if (std::abs(lambda.imag()) > tol.gap_min * scale || lambda.real() <= tol.gap_min * scale ||
      s.dominance_gap < tol.gap_min * scale)
    return v;

  auto right = real_vector(s.right_vectors.col(top), tol.pos_min);
  if (!right) return v;
  if ((right->array().abs() <= tol.pos_min).any()) {
    v.ambiguous = true;
    return v;
  }
  Vector sig = right->array().sign();
  if (sig[0] < 0) sig = -sig;  // global-sign convention: first entry +1
  v.holds = true;
  v.signature = sig;
  return v;
}

SignedVariants signed_variants(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  SignedVariants out;
  const SignedPfVerdict spf = signed_pf(m, tol);
  out.is_spf = spf.holds;
  out.ambiguous = spf.ambiguous;
  if (!spf.holds) return out;
  out.signature = spf.signature;

  const Vector& sig = *spf.signature;
  const Matrix gauged = sig.asDiagonal() * m * sig.asDiagonal();
  out.is_sep = is_eventually_positive(gauged, tol).holds;
  out.is_seep = is_eventually_exponentially_positive(gauged, tol).holds;
  const bool fixes_signature =
      (m * sig - sig).norm() <= tol.tol_zero * std::max(inf_norm(m), 1.0);
  out.is_ses = fixes_signature && is_eventually_stochastic(gauged, tol);
  return out;
}

namespace detail {

bool continuous_consensus_core(const Eigen::Ref<const Matrix>& l, const Tolerances& tol) {
  return marginal_stability(Matrix(-l), Mode::Continuous, tol) && corank(l, tol).corank == 1;
}

bool discrete_consensus_core(const Eigen::Ref<const Matrix>& w, const Tolerances& tol) {
  const Spectrum s = spectrum(w, tol);
  const double scale = std::max(inf_norm(w), 1.0);
  const Index at_one = s.closest(Complex{1.0, 0.0});
  if (std::abs(s.eigenvalues[at_one] - 1.0) > tol.tol_zero * scale * 10.0) return false;
  for (Index i = 0; i < s.size(); ++i) {
    if (i == at_one) continue;
    if (std::abs(s.eigenvalues[i]) > 1.0 - tol.gap_min * scale) return false;
  }
  return marginal_stability(w, Mode::Discrete, tol);
}

}  // namespace detail

ClassificationReport classify_report(const Eigen::Ref<const Matrix>& m, MatrixKind kind,
                                     const Tolerances& tol) {
  require_square(m);
  const Index n = m.rows();
  const Vector ones = Vector::Ones(n);
  const double scale = std::max(inf_norm(m), 1.0);

  ClassificationReport r;
  if (kind == MatrixKind::Auto) {
    if ((m * ones).norm() <= tol.tol_zero * scale)
      kind = MatrixKind::Laplacian;
    else if ((m * ones - ones).norm() <= tol.tol_zero * scale)
      kind = MatrixKind::RowSumOne;
    else
      kind = MatrixKind::General;
  }
  r.kind = kind;
  r.eigen = spectrum(m, tol);

  const bool laplacian = kind == MatrixKind::Laplacian;
  const Matrix dynamics_ct = laplacian ? Matrix(-m) : Matrix(m);
  r.eep = is_eventually_exponentially_positive(dynamics_ct, tol);

  // PF probe: the matrix whose eventual positivity is at stake. For a
  // Laplacian that is the shifted B = dI - L; otherwise the input itself.
  Matrix probe = m;
  if (laplacian) {
    double d = 0.0;
    if (r.eep.witness_d) {
      d = *r.eep.witness_d;
    } else {
      // Shift making the rightmost eigenvalue of -L the spectral radius of
      // dI - L, where such a shift exists; otherwise any large shift (PF
      // fails on it regardless).
      const Spectrum sct = spectrum(dynamics_ct, tol);
      const Complex lead = sct.eigenvalues[0];
      bool analytic = true;
      for (Index i = 1; i < sct.size() && analytic; ++i) {
        const Complex mu = sct.eigenvalues[i];
        if (std::abs(mu - lead) <= tol.gap_min * scale) continue;
        const double denom = 2.0 * (lead.real() - mu.real());
        if (denom <= 0.0)
          analytic = false;
        else
          d = std::max(d, (std::norm(mu) - lead.real() * lead.real()) / denom);
      }
      d = analytic ? std::max(d, -lead.real()) + 1.0 : 2.0 * scale + 1.0;
    }
    r.probe_shift = d;
    probe = d * Matrix::Identity(n, n) - m;
  }
  r.pf_right = pf_property(probe, tol);
  r.pf_left = pf_property(probe.transpose(), tol);
  r.pf_gap = r.pf_right.holds && !r.pf_left.holds;

  r.is_ep = is_eventually_positive(probe, tol).holds;
  r.is_es = is_eventually_stochastic(m, tol);
  r.is_eds = is_eventually_doubly_stochastic(m, tol);

  r.normal = is_normal(m, tol);
  r.weight_balanced = is_weight_balanced(m, tol);
  r.rank = corank(m, tol);
  r.marginally_stable_ct = marginal_stability(dynamics_ct, Mode::Continuous, tol);
  r.marginally_stable_dt = marginal_stability(m, Mode::Discrete, tol);
  r.sym_part = symmetric_part_verdict(m, tol);
  r.signed_flags = signed_variants(laplacian ? probe : Matrix(m), tol);
  return r;
}

}  // namespace slc
