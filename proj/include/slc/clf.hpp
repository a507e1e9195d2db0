#pragma once

#include <optional>
#include <vector>

#include "slc/base.hpp"

namespace slc {

/// Rows form an orthonormal basis of span(𝟙)^⊥: QQᵀ = I_{n-1}, Q𝟙 = 0.
/// Built from the Householder reflector sending 𝟙/√n to e₁, so the
/// construction is deterministic.
struct ProjectionBasis {
  Matrix Q;  // (n-1) x n
};

ProjectionBasis projection_basis(Index n);

/// The projected common-Lyapunov feasibility system. For order r = 1 the
/// constraint blocks are
///   continuous:  -Q L_k P Qᵀ - Q P L_kᵀ Qᵀ ≺ 0
///   discrete:     Q W_kᵀ P W_k Qᵀ - Q P Qᵀ ≺ 0
/// and for r ≥ 2 the Kronecker lifts L̂ = L ⊕ … ⊕ L, Ŵ = W ⊗ … ⊗ W,
/// Q̂ = Q ⊗ … ⊗ Q replace the originals, with P of size n^r.
struct LmiProblem {
  Mode mode = Mode::Continuous;
  int order = 1;
  Index base_dim = 0;
  Matrix Qhat;                 // (n-1)^r x n^r
  std::vector<Matrix> lifted;  // the lifted mode matrices
  double margin_min = 0.0;     // strictness slack for this family

  Index dim() const { return lifted.empty() ? 0 : lifted.front().rows(); }
  Index block_dim() const { return Qhat.rows(); }
  std::size_t modes() const { return lifted.size(); }

  /// Evaluates constraint block k at P.
  Matrix block(std::size_t k, const Eigen::Ref<const Matrix>& p) const;
  /// Adjoint of the block map at a symmetric Y (for least-squares projection).
  Matrix block_adjoint(std::size_t k, const Eigen::Ref<const Matrix>& y) const;
};

/// DimensionCapError when n^r > 64.
LmiProblem assemble_lmi(const std::vector<Matrix>& matrices, Mode mode, int order,
                        const ProjectionBasis& basis);

enum class ClfStatus { Feasible, Unknown };

struct ClfCertificate {
  ClfStatus status = ClfStatus::Unknown;
  int order = 1;
  Matrix P;  // empty unless feasible
  double min_eig_P = 0.0;
  std::vector<double> block_max_eigs;
  double margin_min = 0.0;
  int iterations = 0;
};

struct SdpBudget {
  int max_iterations = 10000;
};

/// Feasibility search by Douglas-Rachford projection splitting between the
/// affine subspace {Y_k = block_k(P)} and the strictified cone set
/// {P ⪰ εI, Y_k ⪯ -εI}. Any candidate is accepted only after independent
/// re-verification; the search never claims infeasibility.
ClfCertificate sdp_feasibility(const LmiProblem& problem, const SdpBudget& budget = {});

struct MarginsReport {
  bool passes = false;
  double min_eig_P = 0.0;
  std::vector<double> block_max_eigs;
  double margin_min = 0.0;
};

/// From-scratch eigenvalue check of a candidate certificate.
MarginsReport verify_certificate(const Eigen::Ref<const Matrix>& p,
                                 const std::vector<Matrix>& matrices, Mode mode, int order,
                                 const ProjectionBasis& basis);

/// Tries orders 1, 2, …, max_order and returns the first verified
/// certificate, or status Unknown. NecessaryTestFailedError if some mode
/// cannot reach consensus on its own.
ClfCertificate clf_consensus_certificate(const std::vector<Matrix>& matrices, Mode mode,
                                         int max_order = 2, const SdpBudget& budget = {},
                                         const Tolerances& tol = {});

}  // namespace slc
