#include "snirkit/centrality.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "snirkit/errors.hpp"

namespace snirkit {

namespace {

// Scratch space for one Brandes source sweep; reused across sources.
struct BrandesScratch {
  std::vector<int> dist;
  std::vector<double> sigma;   // shortest-path counts
  std::vector<double> delta;   // dependency accumulators
  std::vector<int> order;      // nodes in BFS visit order
  std::vector<int> queue;
  explicit BrandesScratch(int n)
      : dist(n), sigma(n), delta(n), order(), queue() {
    order.reserve(n);
    queue.reserve(n);
  }
};

// One source sweep: BFS along out-edges, then dependency accumulation.
// Adds this source's betweenness contribution into `betw` and, when `harm`
// is non-null, adds 1/d(source->t) into harm[t].
void brandes_source(const DirectedGraph& g, int s, BrandesScratch& ws,
                    std::vector<double>& betw, std::vector<double>* harm) {
  std::fill(ws.dist.begin(), ws.dist.end(), -1);
  std::fill(ws.sigma.begin(), ws.sigma.end(), 0.0);
  std::fill(ws.delta.begin(), ws.delta.end(), 0.0);
  ws.order.clear();
  ws.queue.clear();
  ws.dist[s] = 0;
  ws.sigma[s] = 1.0;
  ws.queue.push_back(s);
  for (size_t head = 0; head < ws.queue.size(); ++head) {
    const int v = ws.queue[head];
    ws.order.push_back(v);
    for (const int* p = g.out_begin(v); p != g.out_end(v); ++p) {
      const int w = *p;
      if (ws.dist[w] < 0) {
        ws.dist[w] = ws.dist[v] + 1;
        ws.queue.push_back(w);
      }
      if (ws.dist[w] == ws.dist[v] + 1) ws.sigma[w] += ws.sigma[v];
    }
  }
  if (harm) {
    for (int v : ws.order)
      if (v != s) (*harm)[v] += 1.0 / static_cast<double>(ws.dist[v]);
  }
  // Accumulate dependencies in reverse BFS order (Brandes).
  for (auto it = ws.order.rbegin(); it != ws.order.rend(); ++it) {
    const int w = *it;
    for (const int* p = g.out_begin(w); p != g.out_end(w); ++p) {
      // w is a predecessor of *p on shortest paths iff the levels match.
      if (ws.dist[*p] == ws.dist[w] + 1) {
        // Each predecessor edge w->x contributes sigma_w/sigma_x (1+delta_x)
        // to delta_w; here we iterate successors of w instead.
        ws.delta[w] += ws.sigma[w] / ws.sigma[*p] * (1.0 + ws.delta[*p]);
      }
    }
    if (w != s) betw[w] += ws.delta[w];
  }
}

constexpr int kSourceBlock = 64;

// Shared driver: per-block partial vectors merged in ascending block order,
// which keeps floating-point accumulation order independent of the thread
// count. `want_harm` switches the harmonic accumulation on.
void centrality_blocked(const DirectedGraph& g, std::vector<double>* betw,
                        std::vector<double>* harm) {
  const int n = g.num_nodes();
  if (betw) betw->assign(n, 0.0);
  if (harm) harm->assign(n, 0.0);
  const int nblocks = (n + kSourceBlock - 1) / kSourceBlock;
#pragma omp parallel
  {
    BrandesScratch ws(n);
    std::vector<double> betw_part, harm_part;
#pragma omp for ordered schedule(static, 1)
    for (int b = 0; b < nblocks; ++b) {
      betw_part.assign(n, 0.0);
      if (harm) harm_part.assign(n, 0.0);
      const int lo = b * kSourceBlock;
      const int hi = std::min(n, lo + kSourceBlock);
      for (int s = lo; s < hi; ++s)
        brandes_source(g, s, ws, betw_part, harm ? &harm_part : nullptr);
#pragma omp ordered
      {
        if (betw)
          for (int v = 0; v < n; ++v) (*betw)[v] += betw_part[v];
        if (harm)
          for (int v = 0; v < n; ++v) (*harm)[v] += harm_part[v];
      }
    }
  }
}

}  // namespace

std::vector<double> betweenness(const DirectedGraph& g) {
  std::vector<double> b;
  centrality_blocked(g, &b, nullptr);
  return b;
}

void betweenness_and_harmonic(const DirectedGraph& g, std::vector<double>& betw,
                              std::vector<double>& harm) {
  centrality_blocked(g, &betw, &harm);
}

std::vector<double> betweenness_serial(const DirectedGraph& g) {
  const int n = g.num_nodes();
  std::vector<double> b(n, 0.0);
  BrandesScratch ws(n);
  for (int s = 0; s < n; ++s) brandes_source(g, s, ws, b, nullptr);
  return b;
}

std::vector<double> harmonic(const DirectedGraph& g) {
  std::vector<double> h;
  centrality_blocked(g, nullptr, &h);
  return h;
}

std::vector<double> harmonic_serial(const DirectedGraph& g) {
  const int n = g.num_nodes();
  std::vector<double> h(n, 0.0);
  std::vector<int> dist(n);
  std::vector<int> queue;
  queue.reserve(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    dist[s] = 0;
    queue.push_back(s);
    for (size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      for (const int* p = g.out_begin(v); p != g.out_end(v); ++p) {
        if (dist[*p] < 0) {
          dist[*p] = dist[v] + 1;
          queue.push_back(*p);
          h[*p] += 1.0 / static_cast<double>(dist[*p]);
        }
      }
    }
  }
  return h;
}

double follower_loss(const DirectedGraph& g, const std::vector<int>& s) {
  if (s.empty()) return 0.0;
  if (g.num_edges() == 0)
    throw GraphError("follower_loss: graph has no edges");
  std::int64_t lost = 0;
  for (int j : s) {
    if (j < 0 || j >= g.num_nodes())
      throw GraphError("follower_loss: node out of range");
    lost += g.in_degree(j);
  }
  return static_cast<double>(lost) / static_cast<double>(g.num_edges());
}

}  // namespace snirkit
