#pragma once

#include <optional>
#include <vector>

#include "slc/base.hpp"
#include "slc/clf.hpp"
#include "slc/consensus.hpp"
#include "slc/switching.hpp"

namespace slc {

/// Diagonal ±1 gauge, normalized so the first entry is +1.
struct Signature {
  Vector s;
  Matrix as_matrix() const { return Matrix(s.asDiagonal()); }
  bool operator==(const Signature& other) const { return s == other.s; }
};

/// S·M·S; exact involution (entries are only sign-flipped).
Matrix gauge_transform(const Eigen::Ref<const Matrix>& m, const Signature& sig);

/// Signature from the kernel eigenvector (Laplacian-like inputs, eigenvalue
/// nearest 0) or from the eigenvector fixed by the dynamics (row-sum-gauged
/// inputs, eigenvalue nearest 1). Throws NoKernelError when the anchor
/// eigenvalue is missing or not simple, SignatureAmbiguousError when some
/// entry of the eigenvector is below pos_min in magnitude.
Signature infer_signature(const Eigen::Ref<const Matrix>& m, Mode mode,
                          const Tolerances& tol = {});

/// Bipartite verdict by gauge reduction: infer s, transform z = Sx, analyze
/// the gauged system, transport the limit back (x* = (cᵀSx0)·s).
struct BipartiteVerdict {
  bool achieves_bipartite = false;
  Signature signature;
  std::optional<Vector> limit_functional;  // c_b = S c; x* = (c_bᵀ x0)·s
  ConsensusVerdict gauged;                 // verdict of the gauged system
};

BipartiteVerdict analyze_bipartite(const Eigen::Ref<const Matrix>& m, Mode mode,
                                   const Tolerances& tol = {});

/// Family check: all modes must infer one consistent signature
/// (InconsistentSignaturesError otherwise); the gauged family is then passed
/// through the switching screen and, on referral, the CLF search.
struct BipartiteSetReport {
  Signature signature;
  ConsensusSetReport set_check;
  std::optional<ClfCertificate> certificate;  // present when the CLF search ran
};

BipartiteSetReport bipartite_consensus_set_check(const std::vector<Matrix>& matrices, Mode mode,
                                                 const Tolerances& tol = {}, int max_order = 2,
                                                 const SdpBudget& budget = {});

/// Informational flag: sign-consistent 2-coloring of the undirected support
/// (all cycles positive). Never gates any verdict here.
bool is_structurally_balanced(const Eigen::Ref<const Matrix>& adjacency_or_laplacian);

}  // namespace slc
