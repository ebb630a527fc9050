#include "snirkit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "snirkit/centrality.hpp"
#include "snirkit/errors.hpp"
#include "snirkit/rng.hpp"

namespace snirkit {

namespace {

std::vector<int> top_k_by_score(const std::vector<double>& score, int k) {
  std::vector<int> idx(score.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return a < b;
  });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

std::vector<int> select_by_rule(const DirectedGraph& g,
                                const Eigen::VectorXd& Y,
                                const SelectionRule& rule,
                                const FitConfig& fit_cfg) {
  const int n = g.num_nodes();
  if (rule.size < 1 || rule.size > n)
    throw ConfigError("select_by_rule: size out of range");
  switch (rule.kind) {
    case RuleKind::InDegree: {
      std::vector<double> s(n);
      for (int v = 0; v < n; ++v) s[v] = g.in_degree(v);
      return top_k_by_score(s, rule.size);
    }
    case RuleKind::Response: {
      std::vector<double> s(Y.data(), Y.data() + Y.size());
      return top_k_by_score(s, rule.size);
    }
    case RuleKind::Betweenness:
      return top_k_by_score(betweenness(g), rule.size);
    case RuleKind::Harmonic:
      return top_k_by_score(harmonic(g), rule.size);
    case RuleKind::SNIR: {
      FitConfig fc = fit_cfg;
      fc.K = std::max(fc.K, rule.size);
      FitResult fr = fit(g, Y, fc);
      const int take =
          std::min<int>(rule.size, static_cast<int>(fr.path.picks.size()));
      std::vector<int> s(fr.path.picks.begin(), fr.path.picks.begin() + take);
      std::sort(s.begin(), s.end());
      return s;
    }
  }
  throw ConfigError("select_by_rule: unknown rule");
}

namespace {

// Row-normalized adjacency in CSR form; zero out-degree rows stay zero.
struct RowNormW {
  int n = 0;
  std::vector<int> ptr, idx;
  std::vector<double> w;
  bool all_rows_unit = true;

  explicit RowNormW(const DirectedGraph& g) : n(g.num_nodes()) {
    ptr.resize(n + 1, 0);
    idx.reserve(static_cast<size_t>(g.num_edges()));
    w.reserve(static_cast<size_t>(g.num_edges()));
    for (int v = 0; v < n; ++v) {
      const int d = g.out_degree(v);
      if (d == 0) all_rows_unit = false;
      const double inv = d > 0 ? 1.0 / static_cast<double>(d) : 0.0;
      for (const int* p = g.out_begin(v); p != g.out_end(v); ++p) {
        idx.push_back(*p);
        w.push_back(inv);
      }
      ptr[v + 1] = static_cast<int>(idx.size());
    }
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(n);
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (int e = ptr[v]; e < ptr[v + 1]; ++e) s += w[e] * x[idx[e]];
      out[v] = s;
    }
    return out;
  }
};

// Exact log|I - rho W| evaluator from the (complex) spectrum of W; O(n) per
// evaluation after one dense eigendecomposition.
struct SpectrumLogDet {
  std::vector<std::complex<double>> eig;
  explicit SpectrumLogDet(const RowNormW& W) {
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(W.n, W.n);
    for (int v = 0; v < W.n; ++v)
      for (int e = W.ptr[v]; e < W.ptr[v + 1]; ++e)
        dense(v, W.idx[e]) = W.w[e];
    Eigen::EigenSolver<Eigen::MatrixXd> es(dense, /*computeEigenvectors=*/false);
    const auto& v = es.eigenvalues();
    eig.assign(v.data(), v.data() + v.size());
  }
  double operator()(double rho) const {
    double s = 0.0;
    for (const auto& l : eig) s += 0.5 * std::log(std::norm(1.0 - rho * l));
    return s;
  }
};

// Truncated trace expansion log|I - rho W| = -sum_k rho^k tr(W^k)/k, with
// tr(W) = 0 exactly (no self-loops) and tr(W^2) computed exactly from
// reciprocal edges; higher traces estimated once by seeded Rademacher
// probes and reused for every rho. When every row of W sums to one, the
// known unit eigenvalue is split off analytically as log(1 - rho), which
// keeps the remaining series fast-converging.
struct SeriesLogDet {
  std::vector<double> traces;  // traces[k-1] ~ tr(W^k)
  bool unit_mode = false;

  SeriesLogDet(const DirectedGraph& g, const RowNormW& W, int probes,
               int terms) {
    unit_mode = W.all_rows_unit;
    traces.assign(terms, 0.0);
    // Exact second trace: sum over reciprocal edge pairs of w_ij * w_ji.
    double t2 = 0.0;
    for (int v = 0; v < W.n; ++v) {
      for (int e = W.ptr[v]; e < W.ptr[v + 1]; ++e) {
        const int u = W.idx[e];
        if (g.has_edge(u, v))
          t2 += W.w[e] / static_cast<double>(g.out_degree(u));
      }
    }
    if (terms >= 2) traces[1] = t2;
    if (terms < 3) return;
    Rng rng(0x5a11ad5eedULL);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(terms);
    for (int pr = 0; pr < probes; ++pr) {
      Eigen::VectorXd z(W.n);
      for (int v = 0; v < W.n; ++v)
        z[v] = (rng.next_u64() & 1ULL) ? 1.0 : -1.0;
      Eigen::VectorXd x = z;
      for (int k = 1; k <= terms; ++k) {
        x = W.apply(x);
        if (k >= 3) acc[k - 1] += z.dot(x);
      }
    }
    for (int k = 3; k <= terms; ++k)
      traces[k - 1] = acc[k - 1] / static_cast<double>(probes);
  }

  double operator()(double rho) const {
    double s = unit_mode ? std::log1p(-rho) : 0.0;
    double rp = 1.0;
    for (size_t k = 1; k <= traces.size(); ++k) {
      rp *= rho;
      const double tk = traces[k - 1] - (unit_mode ? 1.0 : 0.0);
      s -= rp * tk / static_cast<double>(k);
    }
    return s;
  }
};

}  // namespace

SarFit sar_fit(const DirectedGraph& g, const Eigen::VectorXd& Y,
               const SarOptions& opts) {
  const int n = g.num_nodes();
  if (Y.size() != n) throw ConfigError("sar_fit: response length != node count");
  if (g.num_edges() == 0) throw GraphError("sar_fit: graph has no edges");
  if (opts.grid_points < 3) throw ConfigError("sar_fit: grid too coarse");
  RowNormW W(g);

  // sigma2(rho) = (||Y||^2 - 2 rho Y'WY + rho^2 ||WY||^2) / N.
  const Eigen::VectorXd wy = W.apply(Y);
  const double yy = Y.squaredNorm();
  const double ywy = Y.dot(wy);
  const double wywy = wy.squaredNorm();
  if (!(yy > 0.0)) throw DegenerateFitError("sar_fit: zero response");

  SarFit out;
  std::unique_ptr<SpectrumLogDet> spec_engine;
  std::unique_ptr<SeriesLogDet> series_engine;
  if (n <= opts.lu_cutoff)
    spec_engine = std::make_unique<SpectrumLogDet>(W);
  else
    series_engine =
        std::make_unique<SeriesLogDet>(g, W, opts.probes, opts.terms);
  auto log_det = [&](double rho) -> double {
    return spec_engine ? (*spec_engine)(rho) : (*series_engine)(rho);
  };
  auto loglik = [&](double rho) -> double {
    const double s2 = (yy - 2.0 * rho * ywy + rho * rho * wywy) /
                      static_cast<double>(n);
    if (!(s2 > 0.0)) return -std::numeric_limits<double>::infinity();
    return -0.5 * n * std::log(s2) + log_det(rho);
  };

  // Coarse grid scan, then golden-section refinement on the best bracket.
  double lo = opts.rho_min, hi = opts.rho_max;
  int best_i = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  bool warned = false;
  std::vector<double> grid(opts.grid_points);
  for (int i = 0; i < opts.grid_points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                       static_cast<double>(opts.grid_points - 1);
    const double v = loglik(grid[i]);
    if (!std::isfinite(v)) {
      if (!warned) {
        out.warnings.push_back(
            "non-finite log-likelihood during grid scan; point skipped");
        warned = true;
      }
      continue;
    }
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  double a = grid[std::max(0, best_i - 1)];
  double b = grid[std::min(opts.grid_points - 1, best_i + 1)];
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = loglik(x1), f2 = loglik(x2);
  while (b - a > opts.tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = loglik(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = loglik(x1);
    }
  }
  out.rho = 0.5 * (a + b);
  out.loglik = loglik(out.rho);
  out.sigma2 = (yy - 2.0 * out.rho * ywy + out.rho * out.rho * wywy) /
               static_cast<double>(n);
  out.boundary = out.rho <= opts.rho_min + 2.0 * opts.tol ||
                 out.rho >= opts.rho_max - 2.0 * opts.tol;
  const double mean = Y.mean();
  const double tss = (Y.array() - mean).matrix().squaredNorm();
  if (tss > 0.0) {
    const double rss_val = yy - 2.0 * out.rho * ywy + out.rho * out.rho * wywy;
    out.r2 = 1.0 - rss_val / tss;
    out.adj_r2 = n > 2 ? 1.0 - (1.0 - out.r2) * static_cast<double>(n - 1) /
                                   static_cast<double>(n - 2)
                       : out.r2;
  }
  return out;
}

double response_loss(const DirectedGraph& g, const Eigen::VectorXd& Y,
                     const std::vector<int>& s, const Eigen::VectorXd& rho_s,
                     bool* clipped) {
  const int n = g.num_nodes();
  if (s.empty()) throw ConfigError("response_loss: empty set");
  if (rho_s.size() != static_cast<int>(s.size()))
    throw ConfigError("response_loss: rho length != |s|");
  std::vector<int> ss = s;
  std::sort(ss.begin(), ss.end());
  std::vector<char> in_s(n, 0);
  for (size_t a = 0; a < ss.size(); ++a) {
    if (ss[a] < 0 || ss[a] >= n)
      throw ConfigError("response_loss: node out of range");
    in_s[ss[a]] = 1;
  }
  const double total = Y.sum();
  if (total == 0.0)
    throw DegenerateFitError("response_loss: total response is zero");
  // rho_s is aligned with the caller's order of s, so walk s as given.
  double removed = 0.0;
  for (size_t a = 0; a < s.size(); ++a) removed += Y[s[a]];
  for (size_t a = 0; a < s.size(); ++a) {
    const int j = s[a];
    const double w = rho_s[static_cast<int>(a)] * Y[j];
    for (const int* q = g.in_begin(j); q != g.in_end(j); ++q)
      if (!in_s[*q]) removed += w;
  }
  double frac = removed / total;
  const bool clip = frac < 0.0 || frac > 1.0;
  if (clipped) *clipped = clip;
  return std::min(1.0, std::max(0.0, frac));
}

ImpactReport compare_methods(const DirectedGraph& g, const Eigen::VectorXd& Y,
                             const FitConfig& fit_cfg, int size_override) {
  if (size_override < 0)
    throw ConfigError("compare_methods: negative size override");
  FitConfig fc = fit_cfg;
  if (size_override > 0) fc.K = std::max(fc.K, size_override);
  FitResult fr = fit(g, Y, fc);
  const int size = size_override > 0 ? size_override : fr.k_star;
  if (size < 1 || size > static_cast<int>(fr.path.picks.size()))
    throw ConfigError("compare_methods: matched size unavailable from path");

  ImpactReport rep;
  rep.size = size;
  std::vector<int> snir_set(fr.path.picks.begin(),
                            fr.path.picks.begin() + size);
  std::sort(snir_set.begin(), snir_set.end());

  std::vector<double> betw, harm;
  betweenness_and_harmonic(g, betw, harm);
  std::vector<double> indeg(g.num_nodes());
  for (int v = 0; v < g.num_nodes(); ++v) indeg[v] = g.in_degree(v);
  std::vector<double> resp(Y.data(), Y.data() + Y.size());

  const std::pair<std::string, std::vector<int>> entries[] = {
      {"snir", snir_set},
      {"in_degree", top_k_by_score(indeg, size)},
      {"response", top_k_by_score(resp, size)},
      {"betweenness", top_k_by_score(betw, size)},
      {"harmonic", top_k_by_score(harm, size)},
  };
  for (const auto& [name, set] : entries) {
    MethodImpact mi;
    mi.selected = set;
    CmleResult cm = cmle(g, Y, set);
    mi.delta_r = response_loss(g, Y, cm.s, cm.rho, &mi.delta_r_clipped);
    mi.delta_f = follower_loss(g, set);
    rep.methods.emplace(name, std::move(mi));
  }
  return rep;
}

}  // namespace snirkit
