#pragma once

// Random graph generators: Erdos-Renyi, stochastic block model, and a
// power-law in-degree model. All are deterministic functions of their seed.

#include <cstdint>

#include "snirkit/graph.hpp"

namespace snirkit {

// Every ordered pair (i, j), i != j, present independently with probability
// p. Default (p < 0) uses p = 0.5 * n^-0.8.
DirectedGraph gen_er(int n, double p, std::uint64_t seed);

// Block labels are assigned uniformly at random over {0..k_blocks-1}; edge
// probability is p_in within a block and p_out across blocks. Defaults
// (negative values) are p_in = n^-0.8, p_out = 0.5 * n^-0.8.
DirectedGraph gen_sbm(int n, int k_blocks, double p_in, double p_out,
                      std::uint64_t seed);

// Each node's in-degree (follower count) is drawn i.i.d. from the truncated
// power law P(k) proportional to k^-alpha on {1..support_cap}, with
// support_cap defaulting to n-1; the followers themselves are sampled
// uniformly without replacement from the other nodes.
DirectedGraph gen_powerlaw(int n, double alpha, std::uint64_t seed,
                           int support_cap = 0);

// Declarative generator description used by the simulation lab and the CLI.
struct GeneratorSpec {
  enum class Kind { ER, SBM, PowerLaw };
  Kind kind = Kind::ER;
  int n = 0;
  double p = -1.0;        // ER edge probability; <0 means the default
  int k_blocks = 5;       // SBM block count
  double p_in = -1.0;     // SBM within-block probability; <0 means default
  double p_out = -1.0;    // SBM across-block probability; <0 means default
  double alpha = 2.5;     // power-law exponent
  int support_cap = 0;    // power-law in-degree cap; 0 means n-1
  std::uint64_t seed = 0;
};

// Dispatch on spec.kind; validates parameters.
DirectedGraph generate(const GeneratorSpec& spec);

}  // namespace snirkit
