#pragma once

#include <vector>

#include "slc/base.hpp"
#include "slc/numerics.hpp"

namespace slc {

/// Directed signed edge (source, target, weight), 1-based node indices.
/// Edge (j, i) means information flows j → i and fills A(i, j).
struct Edge {
  int source = 0;
  int target = 0;
  double weight = 0.0;
};

struct SignedDigraph {
  int n = 0;
  std::vector<Edge> edges;

  /// Throws InvalidGraphError on out-of-range indices, duplicate edges,
  /// zero weights or self-loops.
  void validate() const;
};

struct LaplacianBundle {
  Matrix adjacency;   // A(i,j) nonzero iff edge (j,i) exists
  Vector in_degrees;  // row sums of A
  Matrix laplacian;   // diag(in_degrees) - A, annihilates the ones vector
};

LaplacianBundle laplacian_from_digraph(const SignedDigraph& g);

/// Reads the edge list back off an adjacency matrix (exact nonzero pattern).
SignedDigraph digraph_from_adjacency(const Eigen::Ref<const Matrix>& adjacency);

/// A𝟙 = Aᵀ𝟙 within tol_zero·‖A‖. For Laplacians this reduces to Lᵀ𝟙 ≈ 0.
bool is_weight_balanced(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

/// True iff the unsigned off-diagonal support is strongly connected.
bool is_irreducible(const Eigen::Ref<const Matrix>& m);

/// True iff some root reaches every node along edge direction.
bool has_rooted_spanning_tree(const SignedDigraph& g);

/// |A_ii| on the diagonal, -|A_ij| off it.
Matrix comparison_matrix(const Eigen::Ref<const Matrix>& m);

/// Nonnegative diagonal and comparison matrix an (possibly singular) M-matrix.
bool is_h_plus_matrix(const Eigen::Ref<const Matrix>& m, const Tolerances& tol = {});

/// Tarjan SCCs of a 0-based adjacency-list digraph, in reverse topological order.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& successors);

}  // namespace slc
