#pragma once

// Topology scores used by the baseline selection rules: directed betweenness
// (Brandes accumulation), harmonic closeness toward each node, and the
// follower-loss fraction of a node set.
//
// The parallel versions partition sources into fixed 64-source blocks whose
// partial sums are merged in block order, so the output is bit-identical for
// any thread count. The *_serial variants are independent straightforward
// implementations kept as references for testing and benchmarking.

#include <vector>

#include "snirkit/graph.hpp"

namespace snirkit {

// Fraction of shortest s->t paths (along follow edges) passing through each
// node, endpoints excluded, summed over all ordered pairs.
std::vector<double> betweenness(const DirectedGraph& g);
std::vector<double> betweenness_serial(const DirectedGraph& g);

// H(i) = sum over j != i of 1/d(j->i), with distances along follow edges;
// unreachable pairs contribute zero.
std::vector<double> harmonic(const DirectedGraph& g);
std::vector<double> harmonic_serial(const DirectedGraph& g);

// Both scores from one BFS sweep per source (cheaper when both are needed).
void betweenness_and_harmonic(const DirectedGraph& g,
                              std::vector<double>& betw,
                              std::vector<double>& harm);

// Sum of in-degrees over s divided by total edge count. Empty s gives 0;
// a graph without edges raises GraphError (unless s is empty).
double follower_loss(const DirectedGraph& g, const std::vector<int>& s);

}  // namespace snirkit
