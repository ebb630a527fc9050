#include "snirkit/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "snirkit/errors.hpp"
#include "snirkit/rng.hpp"

namespace snirkit {

namespace {

void check_prob(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError(std::string(name) + " must lie in [0,1], got " +
                      std::to_string(p));
}

// Appends, via geometric skip sampling, the positions in {0..len-1} that an
// i.i.d. Bernoulli(p) sweep would mark. Visiting only the hits makes sparse
// rows O(expected hits) instead of O(len).
template <typename Emit>
void bernoulli_positions(int len, double p, Rng& rng, Emit&& emit) {
  if (len <= 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (int t = 0; t < len; ++t) emit(t);
    return;
  }
  const double denom = std::log1p(-p);
  long long pos = -1;
  while (true) {
    const double u = rng.uniform01();
    const long long skip = static_cast<long long>(std::log1p(-u) / denom);
    pos += skip + 1;
    if (pos >= len) break;
    emit(static_cast<int>(pos));
  }
}

}  // namespace

DirectedGraph gen_er(int n, double p, std::uint64_t seed) {
  if (n < 2) throw ConfigError("gen_er: n must be >= 2");
  if (p < 0.0) p = 0.5 * std::pow(static_cast<double>(n), -0.8);
  check_prob(p, "gen_er: p");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<size_t>(p * n * (n - 1)) + 16);
  for (int i = 0; i < n; ++i) {
    // Positions enumerate the n-1 possible targets with node i removed.
    bernoulli_positions(n - 1, p, rng, [&](int t) {
      edges.emplace_back(i, t >= i ? t + 1 : t);
    });
  }
  return DirectedGraph::from_edges(n, edges);
}

DirectedGraph gen_sbm(int n, int k_blocks, double p_in, double p_out,
                      std::uint64_t seed) {
  if (n < 2) throw ConfigError("gen_sbm: n must be >= 2");
  if (k_blocks < 1) throw ConfigError("gen_sbm: k_blocks must be >= 1");
  if (p_in < 0.0) p_in = std::pow(static_cast<double>(n), -0.8);
  if (p_out < 0.0) p_out = 0.5 * std::pow(static_cast<double>(n), -0.8);
  check_prob(p_in, "gen_sbm: p_in");
  check_prob(p_out, "gen_sbm: p_out");
  Rng rng(seed);
  std::vector<int> label(n);
  for (int i = 0; i < n; ++i)
    label[i] = static_cast<int>(rng.uniform_int(static_cast<uint64_t>(k_blocks)));
  std::vector<std::vector<int>> members(k_blocks);
  std::vector<int> pos_in_block(n);
  for (int i = 0; i < n; ++i) {
    pos_in_block[i] = static_cast<int>(members[label[i]].size());
    members[label[i]].push_back(i);
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int b = 0; b < k_blocks; ++b) {
      const auto& list = members[b];
      const double p = (b == label[i]) ? p_in : p_out;
      if (b == label[i]) {
        // Skip over node i itself by sampling |block|-1 slots and shifting.
        const int self = pos_in_block[i];
        bernoulli_positions(static_cast<int>(list.size()) - 1, p, rng,
                            [&](int t) {
                              edges.emplace_back(i, list[t >= self ? t + 1 : t]);
                            });
      } else {
        bernoulli_positions(static_cast<int>(list.size()), p, rng,
                            [&](int t) { edges.emplace_back(i, list[t]); });
      }
    }
  }
  return DirectedGraph::from_edges(n, edges);
}

DirectedGraph gen_powerlaw(int n, double alpha, std::uint64_t seed,
                           int support_cap) {
  if (n < 2) throw ConfigError("gen_powerlaw: n must be >= 2");
  if (!(alpha > 1.0)) throw ConfigError("gen_powerlaw: alpha must be > 1");
  if (support_cap <= 0) support_cap = n - 1;
  if (support_cap > n - 1)
    throw ConfigError("gen_powerlaw: support cap exceeds n-1");
  Rng rng(seed);
  // Exact normalization by direct summation over the truncated support.
  std::vector<double> cdf(support_cap);
  double total = 0.0;
  for (int k = 1; k <= support_cap; ++k) {
    total += std::pow(static_cast<double>(k), -alpha);
    cdf[k - 1] = total;
  }
  for (double& c : cdf) c /= total;
  std::vector<std::pair<int, int>> edges;
  std::unordered_map<int, int> swapped;  // sparse Fisher-Yates state
  for (int j = 0; j < n; ++j) {
    const double u = rng.uniform01();
    const int deg =
        1 + static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) -
                             cdf.begin());
    const int d = std::min(deg, support_cap);
    // Draw d distinct followers from the n-1 nodes other than j: partial
    // Fisher-Yates over a virtual array, materializing only touched slots.
    swapped.clear();
    auto slot = [&](int idx) {
      auto it = swapped.find(idx);
      return it == swapped.end() ? idx : it->second;
    };
    for (int t = 0; t < d; ++t) {
      const int limit = (n - 1) - t;
      const int r = t + static_cast<int>(rng.uniform_int(
                            static_cast<uint64_t>(limit)));
      const int val = slot(r);
      swapped[r] = slot(t);
      swapped[t] = val;
      const int follower = val >= j ? val + 1 : val;  // skip j itself
      edges.emplace_back(follower, j);
    }
  }
  return DirectedGraph::from_edges(n, edges);
}

DirectedGraph generate(const GeneratorSpec& spec) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::ER:
      return gen_er(spec.n, spec.p, spec.seed);
    case GeneratorSpec::Kind::SBM:
      return gen_sbm(spec.n, spec.k_blocks, spec.p_in, spec.p_out, spec.seed);
    case GeneratorSpec::Kind::PowerLaw:
      return gen_powerlaw(spec.n, spec.alpha, spec.seed, spec.support_cap);
  }
  throw ConfigError("generate: unknown generator kind");
}

}  // namespace snirkit
