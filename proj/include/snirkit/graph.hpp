#pragma once

// Directed graph in compressed sparse row form, kept twice: once over
// out-edges (who a node follows) and once over in-edges (a node's
// followers). Edge (i, j) means "i follows j", so information flows from j
// to i and the in-degree of j is its follower count.

#include <cstdint>
#include <utility>
#include <vector>

namespace snirkit {

class DirectedGraph {
 public:
  DirectedGraph() = default;

  // Build from an edge list over nodes 0..n-1. Edges must be unique, with no
  // self-loops and endpoints in range; violations throw GraphError. A graph
  // needs at least two nodes.
  static DirectedGraph from_edges(int n,
                                  const std::vector<std::pair<int, int>>& edges);

  int num_nodes() const { return n_; }
  std::int64_t num_edges() const { return static_cast<std::int64_t>(out_idx_.size()); }

  int out_degree(int i) const { return out_ptr_[i + 1] - out_ptr_[i]; }
  int in_degree(int j) const { return in_ptr_[j + 1] - in_ptr_[j]; }

  // Nodes that `i` follows, ascending.
  const int* out_begin(int i) const { return out_idx_.data() + out_ptr_[i]; }
  const int* out_end(int i) const { return out_idx_.data() + out_ptr_[i + 1]; }

  // Followers of `j`, ascending.
  const int* in_begin(int j) const { return in_idx_.data() + in_ptr_[j]; }
  const int* in_end(int j) const { return in_idx_.data() + in_ptr_[j + 1]; }

  bool has_edge(int i, int j) const;

  std::vector<int> in_degrees() const;
  std::vector<int> out_degrees() const;

  // Subgraph induced by `nodes` (need not be sorted; duplicates throw).
  // Result nodes are renumbered 0..k-1 in the sorted order of `nodes`.
  DirectedGraph induced_subgraph(const std::vector<int>& nodes) const;

  // All edges as (follower, followed) pairs, sorted.
  std::vector<std::pair<int, int>> edges() const;

 private:
  int n_ = 0;
  std::vector<int> out_ptr_, out_idx_;
  std::vector<int> in_ptr_, in_idx_;
};

}  // namespace snirkit
