#include "snirkit/graph.hpp"

#include <algorithm>
#include <string>

#include "snirkit/errors.hpp"

namespace snirkit {

DirectedGraph DirectedGraph::from_edges(
    int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 2) throw GraphError("graph needs at least 2 nodes, got " +
                              std::to_string(n));
  DirectedGraph g;
  g.n_ = n;
  g.out_ptr_.assign(n + 1, 0);
  g.in_ptr_.assign(n + 1, 0);
  for (const auto& [i, j] : edges) {
    if (i < 0 || i >= n || j < 0 || j >= n)
      throw GraphError("edge endpoint out of range: (" + std::to_string(i) +
                       ", " + std::to_string(j) + ")");
    if (i == j)
      throw GraphError("self-loop at node " + std::to_string(i));
    ++g.out_ptr_[i + 1];
    ++g.in_ptr_[j + 1];
  }
  for (int v = 0; v < n; ++v) {
    g.out_ptr_[v + 1] += g.out_ptr_[v];
    g.in_ptr_[v + 1] += g.in_ptr_[v];
  }
  g.out_idx_.resize(edges.size());
  g.in_idx_.resize(edges.size());
  std::vector<int> ocur(g.out_ptr_.begin(), g.out_ptr_.end() - 1);
  std::vector<int> icur(g.in_ptr_.begin(), g.in_ptr_.end() - 1);
  for (const auto& [i, j] : edges) {
    g.out_idx_[ocur[i]++] = j;
    g.in_idx_[icur[j]++] = i;
  }
  for (int v = 0; v < n; ++v) {
    std::sort(g.out_idx_.begin() + g.out_ptr_[v],
              g.out_idx_.begin() + g.out_ptr_[v + 1]);
    std::sort(g.in_idx_.begin() + g.in_ptr_[v],
              g.in_idx_.begin() + g.in_ptr_[v + 1]);
    auto b = g.out_idx_.begin() + g.out_ptr_[v];
    auto e = g.out_idx_.begin() + g.out_ptr_[v + 1];
    if (std::adjacent_find(b, e) != e)
      throw GraphError("duplicate edge from node " + std::to_string(v));
  }
  return g;
}

bool DirectedGraph::has_edge(int i, int j) const {
  return std::binary_search(out_begin(i), out_end(i), j);
}

std::vector<int> DirectedGraph::in_degrees() const {
  std::vector<int> d(n_);
  for (int v = 0; v < n_; ++v) d[v] = in_degree(v);
  return d;
}

std::vector<int> DirectedGraph::out_degrees() const {
  std::vector<int> d(n_);
  for (int v = 0; v < n_; ++v) d[v] = out_degree(v);
  return d;
}

DirectedGraph DirectedGraph::induced_subgraph(
    const std::vector<int>& nodes) const {
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw GraphError("induced_subgraph: duplicate node in selection");
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= n_))
    throw GraphError("induced_subgraph: node out of range");
  std::vector<int> remap(n_, -1);
  for (size_t k = 0; k < sorted.size(); ++k) remap[sorted[k]] = static_cast<int>(k);
  std::vector<std::pair<int, int>> sub_edges;
  for (int v : sorted) {
    for (const int* p = out_begin(v); p != out_end(v); ++p) {
      if (remap[*p] >= 0) sub_edges.emplace_back(remap[v], remap[*p]);
    }
  }
  return from_edges(static_cast<int>(sorted.size()), sub_edges);
}

std::vector<std::pair<int, int>> DirectedGraph::edges() const {
  std::vector<std::pair<int, int>> e;
  e.reserve(out_idx_.size());
  for (int v = 0; v < n_; ++v)
    for (const int* p = out_begin(v); p != out_end(v); ++p)
      e.emplace_back(v, *p);
  return e;
}

}  // namespace snirkit
