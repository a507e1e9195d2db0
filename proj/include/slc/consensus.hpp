#pragma once

#include <optional>
#include <string>

#include "slc/base.hpp"
#include "slc/classify.hpp"

namespace slc {

/// Verdict for a single time-invariant protocol.
///
/// When consensus holds the limit is x* = (cᵀx0)·𝟙 with c the reported
/// limit functional (cᵀ𝟙 = 1). `basis` names the decision route:
///   "eep-sufficient"   eventual exponential positivity fired (ct)
///   "es-sufficient"    eventual stochasticity fired (dt)
///   "spectral"         the full marginal-stability/corank test decided
///   "undirected-definiteness" / "undirected-eds"  symmetric-case criteria
/// `gap_note` marks instances with a right PF property whose transpose has
/// none; their stability class is not decidable from PF structure alone.
/// `mixed_sign_limit` flags a sign-mixed limit functional.
struct ConsensusVerdict {
  bool achieves_consensus = false;
  std::optional<Vector> limit_functional;
  std::string basis = "spectral";
  bool gap_note = false;
  bool mixed_sign_limit = false;
};

/// x' = -Lx. Requires L·𝟙 ≈ 0 (NotALaplacianError otherwise).
ConsensusVerdict analyze_continuous(const Eigen::Ref<const Matrix>& l, const Tolerances& tol = {});

/// x(t+1) = Wx(t). Requires W·𝟙 ≈ 𝟙 (NotRowSumOneError otherwise).
ConsensusVerdict analyze_discrete(const Eigen::Ref<const Matrix>& w, const Tolerances& tol = {});

/// Necessary-and-sufficient verdicts for symmetric inputs.
ConsensusVerdict undirected_verdict(const Eigen::Ref<const Matrix>& m, Mode mode,
                                    const Tolerances& tol = {});

}  // namespace slc
