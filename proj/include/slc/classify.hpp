#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slc/base.hpp"
#include "slc/numerics.hpp"

namespace slc {

/// Outcome of the Perron-Frobenius test: the spectral radius must be a
/// simple, real, positive, strictly dominant eigenvalue whose right
/// eigenvector is entrywise strictly positive.
struct PfVerdict {
  bool holds = false;
  double rho = 0.0;
  double dominance_gap = 0.0;
  std::optional<Vector> right_vector;  // unit norm, positive when holds
  std::optional<Vector> left_vector;   // paired left eigenvector when real
  std::vector<std::string> reasons;    // failed-criterion tags
};

PfVerdict pf_property(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

/// Eigen-characterized eventual positivity (PF property of M and Mᵀ),
/// with an optional direct confirmation by matrix powers.
struct EpVerdict {
  bool holds = false;
  /// Smallest t0 <= power_t_max with M^t > 0 at t0 and t0+1, when found.
  std::optional<int> power_threshold;
};

EpVerdict is_eventually_positive(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

/// Eventual exponential positivity of M (e^{Mt} > 0 beyond some t).
/// Holds iff the rightmost eigenvalue of M is real, simple, strictly
/// dominant in real part, and its right and left eigenvectors are strictly
/// one-signed. witness_d is the analytic shift making M + dI eventually
/// positive; it is re-validated through is_eventually_positive.
struct EepVerdict {
  bool holds = false;
  std::optional<double> witness_d;
  bool witness_validated = false;
  std::vector<std::string> reasons;
};

EepVerdict is_eventually_exponentially_positive(const Eigen::Ref<const Matrix>& m,
                                                const Tolerances& tol = {});

/// Row sums one and eventually positive. Entries may be negative.
bool is_eventually_stochastic(const Eigen::Ref<const Matrix>& w, const Tolerances& tol = {});
/// Eventually stochastic with column sums one as well.
bool is_eventually_doubly_stochastic(const Eigen::Ref<const Matrix>& w, const Tolerances& tol = {});

/// Hurwitz/Schur half: no eigenvalue strictly outside the stable region and
/// every boundary eigenvalue semisimple (geometric = algebraic multiplicity).
bool marginal_stability(const Eigen::Ref<const Matrix>& m, Mode mode, const Tolerances& tol = {});

bool is_normal(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

/// Definiteness of (L + Lᵀ)/2.
DefinitenessReport symmetric_part_verdict(const Eigen::Ref<const Matrix>& l,
                                          const Tolerances& tol = {});

/// Signed PF property: spectral radius simple, real, strictly dominant and
/// |v_r| entrywise positive; the signature is the sign pattern of v_r,
/// normalized so its first entry is +1. `ambiguous` is set (and holds
/// cleared) when some |[v_r]_i| falls below pos_min.
struct SignedPfVerdict {
  bool holds = false;
  bool ambiguous = false;
  std::optional<Vector> signature;
  double rho = 0.0;
};

SignedPfVerdict signed_pf(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

/// Signed variants, evaluated by gauging with S = diag(signature):
/// SEP/SEEP/SES of M are EP/EEP/ES of SMS (SES additionally checks Ms = s).
struct SignedVariants {
  bool is_spf = false;
  bool is_sep = false;
  bool is_seep = false;
  bool is_ses = false;
  bool ambiguous = false;
  std::optional<Vector> signature;
};

SignedVariants signed_variants(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

enum class MatrixKind { Auto, Laplacian, RowSumOne, General };

namespace detail {
/// Single-mode consensus cores shared by the time-invariant analysis, the
/// switching screen and the certificate search preconditions.
bool continuous_consensus_core(const Eigen::Ref<const Matrix>& l, const Tolerances& tol);
bool discrete_consensus_core(const Eigen::Ref<const Matrix>& w, const Tolerances& tol);
}  // namespace detail

/// Full classification bundle.
///
/// For Laplacian-kind input L the PF columns are evaluated on the shifted
/// probe B = dI - L (d = the analytic witness shift) and eventual
/// exponential positivity on -L; for other kinds every flag refers to the
/// input matrix itself. Corank, weight balance, normality and the symmetric
/// part always refer to the input.
struct ClassificationReport {
  MatrixKind kind = MatrixKind::General;
  Spectrum eigen;  // of the input matrix

  PfVerdict pf_right;  // PF probe
  PfVerdict pf_left;   // PF probe, transposed
  double probe_shift = 0.0;
  bool pf_gap = false;  // right PF holds while left PF fails

  bool is_ep = false;
  EepVerdict eep;
  bool is_es = false;
  bool is_eds = false;

  bool normal = false;
  bool weight_balanced = false;
  RankReport rank;
  bool marginally_stable_ct = false;  // of -L for Laplacian kind, else of M
  bool marginally_stable_dt = false;  // of the input matrix
  DefinitenessReport sym_part;
  SignedVariants signed_flags;
};

ClassificationReport classify_report(const Eigen::Ref<const Matrix>& m,
                                     MatrixKind kind = MatrixKind::Auto,
                                     const Tolerances& tol = {});

}  // namespace slc
