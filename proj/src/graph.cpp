#include "slc/graph.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace slc {

void SignedDigraph::validate() const {
  if (n < 1) throw InvalidGraphError("graph needs at least one node");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.source < 1 || e.source > n || e.target < 1 || e.target > n)
      throw InvalidGraphError("edge index out of range");
    if (e.source == e.target) throw InvalidGraphError("self-loops are not allowed");
    if (e.weight == 0.0) throw InvalidGraphError("edge weight must be nonzero");
    if (!std::isfinite(e.weight)) throw InvalidGraphError("edge weight must be finite");
    if (!seen.insert({e.source, e.target}).second)
      throw InvalidGraphError("duplicate edge");
  }
}

LaplacianBundle laplacian_from_digraph(const SignedDigraph& g) {
  g.validate();
  LaplacianBundle bundle;
  bundle.adjacency = Matrix::Zero(g.n, g.n);
  for (const Edge& e : g.edges) bundle.adjacency(e.target - 1, e.source - 1) = e.weight;
  bundle.in_degrees = bundle.adjacency.rowwise().sum();
  bundle.laplacian = -bundle.adjacency;
  bundle.laplacian.diagonal() += bundle.in_degrees;
  return bundle;
}

SignedDigraph digraph_from_adjacency(const Eigen::Ref<const Matrix>& adjacency) {
  require_square(adjacency);
  SignedDigraph g;
  g.n = static_cast<int>(adjacency.rows());
  for (Index i = 0; i < adjacency.rows(); ++i)
    for (Index j = 0; j < adjacency.cols(); ++j)
      if (i != j && adjacency(i, j) != 0.0)
        g.edges.push_back({static_cast<int>(j) + 1, static_cast<int>(i) + 1, adjacency(i, j)});
  return g;
}

bool is_weight_balanced(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  require_square(m);
  const Vector ones = Vector::Ones(m.rows());
  return (m.transpose() * ones - m * ones).norm() <= tol.tol_zero * std::max(inf_norm(m), 1e-300);
}

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& successors) {
  const int n = static_cast<int>(successors.size());
  std::vector<int> number(n, -1), low(n, -1), stack_pos(n, -1), stack;
  std::vector<std::vector<int>> sccs;
  int counter = 0;

  // Iterative Tarjan; frames hold (vertex, next successor index).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (number[root] != -1) continue;
    frames.emplace_back(root, 0);
    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      if (next == 0) {
        number[v] = low[v] = counter++;
        stack_pos[v] = static_cast<int>(stack.size());
        stack.push_back(v);
      }
      if (next < successors[static_cast<std::size_t>(v)].size()) {
        int w = successors[static_cast<std::size_t>(v)][next++];
        if (number[w] == -1) {
          frames.emplace_back(w, 0);
        } else if (stack_pos[w] != -1) {
          low[v] = std::min(low[v], number[w]);
        }
      } else {
        if (low[v] == number[v]) {
          const auto base = static_cast<std::size_t>(stack_pos[v]);
          std::vector<int> scc(stack.begin() + static_cast<std::ptrdiff_t>(base), stack.end());
          for (int w : scc) stack_pos[w] = -1;
          stack.resize(base);
          sccs.push_back(std::move(scc));
        }
        int finished = v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[finished]);
      }
    }
  }
  return sccs;
}

namespace {

std::vector<std::vector<int>> support_successors(const Eigen::Ref<const Matrix>& m) {
  // Edge (j, i) iff M_ij != 0: successor lists follow information flow.
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(m.rows()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0.0) succ[static_cast<std::size_t>(j)].push_back(static_cast<int>(i));
  return succ;
}

}  // namespace

bool is_irreducible(const Eigen::Ref<const Matrix>& m) {
  require_square(m);
  if (m.rows() == 1) return true;
  auto sccs = strongly_connected_components(support_successors(m));
  return sccs.size() == 1;
}

bool has_rooted_spanning_tree(const SignedDigraph& g) {
  g.validate();
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(g.n));
  for (const Edge& e : g.edges) succ[static_cast<std::size_t>(e.source - 1)].push_back(e.target - 1);
  auto sccs = strongly_connected_components(succ);

  // A rooted spanning tree exists iff the condensation has exactly one source.
  std::vector<int> comp(static_cast<std::size_t>(g.n));
  for (std::size_t c = 0; c < sccs.size(); ++c)
    for (int v : sccs[c]) comp[static_cast<std::size_t>(v)] = static_cast<int>(c);
  std::vector<bool> has_incoming(sccs.size(), false);
  for (const Edge& e : g.edges) {
    int cs = comp[static_cast<std::size_t>(e.source - 1)];
    int ct = comp[static_cast<std::size_t>(e.target - 1)];
    if (cs != ct) has_incoming[static_cast<std::size_t>(ct)] = true;
  }
  int sources = 0;
  for (bool b : has_incoming)
    if (!b) ++sources;
  return sources == 1;
}

Matrix comparison_matrix(const Eigen::Ref<const Matrix>& m) {
  require_square(m);
  Matrix out = -m.cwiseAbs();
  out.diagonal() = m.diagonal().cwiseAbs();
  return out;
}

bool is_h_plus_matrix(const Eigen::Ref<const Matrix>& m, const Tolerances& tol) {
  require_square(m);
  if ((m.diagonal().array() < 0.0).any()) return false;
  // M(A) = sI - N with N >= 0; M-matrix iff rho(N) <= s.
  const Matrix comp = comparison_matrix(m);
  const double s = comp.diagonal().maxCoeff();
  Matrix n = -comp;
  n.diagonal().array() += s;
  const double rho = spectrum(n, tol).spectral_radius;
  return rho <= s + tol.tol_zero * std::max(inf_norm(m), 1.0);
}

}  // namespace slc
