#include "slc/consensus.hpp"

#include "slc/graph.hpp"

#include <cmath>

namespace slc {

namespace {

// Left eigenvector for the eigenvalue nearest `target`, normalized to
// cᵀ𝟙 = 1. Requires the eigenvector to be numerically real.
std::optional<Vector> limit_functional_at(const Spectrum& s, Complex target, double pos_min) {
  const Index k = s.closest(target);
  ComplexVector w = s.left_vectors.col(k);
  if (w.imag().cwiseAbs().maxCoeff() > pos_min) return std::nullopt;
  Vector c = w.real();
  const double mass = c.sum();
  if (std::abs(mass) < 1e-12 * c.lpNorm<1>()) return std::nullopt;  // defective pairing
  return Vector(c / mass);
}

bool mixed_signs(const Vector& c, double pos_min) {
  return (c.array() > pos_min).any() && (c.array() < -pos_min).any();
}

}  // namespace

ConsensusVerdict analyze_continuous(const Eigen::Ref<const Matrix>& l, const Tolerances& tol) {
  require_square(l);
  const Index n = l.rows();
  const Vector ones = Vector::Ones(n);
  const double scale = std::max(inf_norm(l), 1.0);
  if ((l * ones).cwiseAbs().maxCoeff() > tol.tol_zero * scale)
    throw NotALaplacianError("row sums must vanish");

  ConsensusVerdict v;
  const Matrix neg = -l;
  v.achieves_consensus = detail::continuous_consensus_core(l, tol);

  const EepVerdict eep = is_eventually_exponentially_positive(neg, tol);
  if (eep.holds) v.basis = "eep-sufficient";

  // The gap class: dI - L has the PF property but -L is not EEP.
  if (!eep.holds) {
    const Spectrum sct = spectrum(neg, tol);
    const Complex lead = sct.eigenvalues[0];
    double d = 0.0;
    bool analytic = true;
    for (Index i = 1; i < sct.size(); ++i) {
      const Complex mu = sct.eigenvalues[i];
      if (std::abs(mu - lead) <= tol.gap_min * scale) { analytic = false; break; }
      const double denom = 2.0 * (lead.real() - mu.real());
      if (denom <= 0.0) { analytic = false; break; }
      d = std::max(d, (std::norm(mu) - lead.real() * lead.real()) / denom);
    }
    if (analytic) {
      d = std::max(d, -lead.real()) + 1.0;
      Matrix probe = -l;
      probe.diagonal().array() += d;
      v.gap_note = pf_property(probe, tol).holds;
    }
  }

  if (v.achieves_consensus) {
    const Spectrum s = spectrum(l, tol);
    v.limit_functional = limit_functional_at(s, Complex{0.0, 0.0}, tol.pos_min);
    if (!v.limit_functional)
      throw NumericalFailureError("left kernel vector could not be extracted");
    v.mixed_sign_limit = mixed_signs(*v.limit_functional, tol.pos_min);
  }
  return v;
}

ConsensusVerdict analyze_discrete(const Eigen::Ref<const Matrix>& w, const Tolerances& tol) {
  require_square(w);
  const Index n = w.rows();
  const Vector ones = Vector::Ones(n);
  const double scale = std::max(inf_norm(w), 1.0);
  if ((w * ones - ones).cwiseAbs().maxCoeff() > tol.tol_zero * scale)
    throw NotRowSumOneError("row sums must be one");

  ConsensusVerdict v;
  const Spectrum s = spectrum(w, tol);
  v.achieves_consensus = detail::discrete_consensus_core(w, tol);

  if (is_eventually_stochastic(w, tol)) {
    v.basis = "es-sufficient";
  } else {
    v.gap_note = pf_property(w, tol).holds;
  }

  if (v.achieves_consensus) {
    v.limit_functional = limit_functional_at(s, Complex{1.0, 0.0}, tol.pos_min);
    if (!v.limit_functional)
      throw NumericalFailureError("left eigenvector at one could not be extracted");
    v.mixed_sign_limit = mixed_signs(*v.limit_functional, tol.pos_min);
  }
  return v;
}

ConsensusVerdict undirected_verdict(const Eigen::Ref<const Matrix>& m, Mode mode,
                                    const Tolerances& tol) {
  require_square(m);
  const double scale = std::max(inf_norm(m), 1.0);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol.tol_sym * scale)
    throw NotSymmetricError("undirected verdict requires a symmetric matrix");

  ConsensusVerdict v;
  const Index n = m.rows();
  const Vector ones = Vector::Ones(n);
  if (mode == Mode::Continuous) {
    if ((m * ones).cwiseAbs().maxCoeff() > tol.tol_zero * scale)
      throw NotALaplacianError("row sums must vanish");
    // Consensus iff L is psd of corank 1 (equivalently -L is EEP).
    v.basis = "undirected-definiteness";
    v.achieves_consensus = definiteness(m, tol).is_psd_of_corank(1);
  } else {
    if ((m * ones - ones).cwiseAbs().maxCoeff() > tol.tol_zero * scale)
      throw NotRowSumOneError("row sums must be one");
    v.basis = "undirected-eds";
    v.achieves_consensus = is_eventually_doubly_stochastic(m, tol);
  }
  if (v.achieves_consensus)
    v.limit_functional = Vector::Constant(n, 1.0 / static_cast<double>(n));
  return v;
}

}  // namespace slc
