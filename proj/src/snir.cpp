#include "snirkit/snir.hpp"

#include <omp.h>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "snirkit/errors.hpp"
#include "snirkit/rng.hpp"
#include "snirkit/stats.hpp"

namespace snirkit {

namespace {

// Relative tolerance deciding whether a candidate's residual column has
// collapsed (rank deficiency): residual norm below 1e-10 of the original.
constexpr double kRankTolSq = 1e-20;
// Two RSS reductions within this relative distance count as a tie, resolved
// toward the smaller node index.
constexpr double kTieTol = 1e-9;
// A step whose RSS falls below this fraction of RSS(empty) is a perfect fit.
constexpr double kPerfectFitTol = 1e-13;

double ebic_floored(double rss_value, int s_size, int m_size, int mc_size) {
  const double r = std::max(rss_value, DBL_MIN);
  return std::log(r) + static_cast<double>(s_size) *
                           (std::log(static_cast<double>(mc_size)) +
                            2.0 * std::log(static_cast<double>(m_size))) /
                           static_cast<double>(mc_size);
}

std::vector<int> sorted_unique_checked(std::vector<int> v, int n,
                                       const char* what) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw ConfigError(std::string(what) + ": duplicate node");
  if (!v.empty() && (v.front() < 0 || v.back() >= n))
    throw ConfigError(std::string(what) + ": node out of range");
  return v;
}

// Run `f` and re-throw any library error with a stage prefix, preserving
// the concrete exception type so callers can still dispatch on it.
template <class F>
auto run_stage(const char* stage, F&& f) -> decltype(f()) {
  auto tag = [&](const char* msg) {
    return std::string("fit[") + stage + "]: " + msg;
  };
  try {
    return f();
  } catch (const SingularDesignError& e) {
    throw SingularDesignError(tag(e.what()), e.index);
  } catch (const DegenerateFitError& e) {
    throw DegenerateFitError(tag(e.what()));
  } catch (const ConfigError& e) {
    throw ConfigError(tag(e.what()));
  } catch (const GraphError& e) {
    throw GraphError(tag(e.what()));
  }
}

}  // namespace

std::vector<int> screen_candidates(const DirectedGraph& g,
                                   const ScreenConfig& cfg) {
  const int n = g.num_nodes();
  int m = cfg.m;
  if (m == 0) {
    if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0))
      throw ConfigError("screen_candidates: gamma must lie in (0,1]");
    // The epsilon keeps exact integer powers (e.g. 1000^(2/3) = 100) from
    // flooring one short.
    m = static_cast<int>(
        std::floor(std::pow(static_cast<double>(n), cfg.gamma) + 1e-9));
  }
  if (m < 1) throw ConfigError("screen_candidates: candidate count is 0");
  if (m >= n)
    throw ConfigError("screen_candidates: candidate count " +
                      std::to_string(m) + " must be < N = " +
                      std::to_string(n));
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const int da = g.in_degree(a), db = g.in_degree(b);
    if (da != db) return da > db;
    return a < b;
  });
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

DesignContext DesignContext::build(const DirectedGraph& g,
                                   const Eigen::VectorXd& Y,
                                   std::vector<int> candidates,
                                   std::vector<int> rows) {
  const int n = g.num_nodes();
  if (Y.size() != n)
    throw ConfigError("DesignContext: response length != node count");
  candidates = sorted_unique_checked(std::move(candidates), n, "candidates");
  rows = sorted_unique_checked(std::move(rows), n, "rows");
  if (candidates.empty()) throw ConfigError("DesignContext: no candidates");
  if (rows.empty()) throw ConfigError("DesignContext: no regression rows");
  std::vector<int> row_pos(n, -1);
  for (size_t k = 0; k < rows.size(); ++k) {
    row_pos[rows[k]] = static_cast<int>(k);
  }
  for (int c : candidates)
    if (row_pos[c] >= 0)
      throw ConfigError("DesignContext: candidate " + std::to_string(c) +
                        " also appears among rows");
  DesignContext ctx;
  ctx.rows = std::move(rows);
  ctx.candidates = std::move(candidates);
  ctx.y.resize(static_cast<int>(ctx.rows.size()));
  for (size_t k = 0; k < ctx.rows.size(); ++k) ctx.y[k] = Y[ctx.rows[k]];
  ctx.col_rows.resize(ctx.candidates.size());
  ctx.col_scale.resize(ctx.candidates.size());
  ctx.col_norm2.resize(ctx.candidates.size());
  for (size_t c = 0; c < ctx.candidates.size(); ++c) {
    const int j = ctx.candidates[c];
    auto& list = ctx.col_rows[c];
    for (const int* p = g.in_begin(j); p != g.in_end(j); ++p)
      if (row_pos[*p] >= 0) list.push_back(row_pos[*p]);
    ctx.col_scale[c] = Y[j];
    ctx.col_norm2[c] =
        Y[j] * Y[j] * static_cast<double>(list.size());
  }
  return ctx;
}

DesignContext DesignContext::standard(const DirectedGraph& g,
                                      const Eigen::VectorXd& Y,
                                      const ScreenConfig& cfg) {
  std::vector<int> m = screen_candidates(g, cfg);
  std::vector<int> rows;
  rows.reserve(g.num_nodes() - m.size());
  size_t mi = 0;
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (mi < m.size() && m[mi] == v) {
      ++mi;
    } else {
      rows.push_back(v);
    }
  }
  return build(g, Y, std::move(m), std::move(rows));
}

Eigen::VectorXd DesignContext::dense_column(int c) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(num_rows());
  for (int pos : col_rows[c]) x[pos] = col_scale[c];
  return x;
}

namespace {

// Position of node id within ctx.candidates, or ConfigError.
int candidate_position(const DesignContext& ctx, int node) {
  auto it = std::lower_bound(ctx.candidates.begin(), ctx.candidates.end(), node);
  if (it == ctx.candidates.end() || *it != node)
    throw ConfigError("node " + std::to_string(node) +
                      " is not a screened candidate");
  return static_cast<int>(it - ctx.candidates.begin());
}

// Orthonormal basis of the columns in `positions` (that order) via modified
// Gram-Schmidt with one re-orthogonalization pass. Throws on rank collapse,
// naming the offending node.
std::vector<Eigen::VectorXd> orthonormal_basis(
    const DesignContext& ctx, const std::vector<int>& positions) {
  std::vector<Eigen::VectorXd> q;
  q.reserve(positions.size());
  for (int c : positions) {
    Eigen::VectorXd v = ctx.dense_column(c);
    for (const auto& b : q) v -= b.dot(v) * b;
    for (const auto& b : q) v -= b.dot(v) * b;
    const double n2 = v.squaredNorm();
    if (n2 <= kRankTolSq * std::max(ctx.col_norm2[c], DBL_MIN))
      throw SingularDesignError(
          "rank-deficient design at node " +
              std::to_string(ctx.candidates[c]),
          ctx.candidates[c]);
    q.push_back(v / std::sqrt(n2));
  }
  return q;
}

}  // namespace

double rss(const DesignContext& ctx, const std::vector<int>& s) {
  std::vector<int> positions;
  positions.reserve(s.size());
  std::vector<int> sorted_s = s;
  std::sort(sorted_s.begin(), sorted_s.end());
  if (std::adjacent_find(sorted_s.begin(), sorted_s.end()) != sorted_s.end())
    throw ConfigError("rss: duplicate node in selection");
  for (int node : sorted_s) positions.push_back(candidate_position(ctx, node));
  double out = ctx.y.squaredNorm();
  const auto q = orthonormal_basis(ctx, positions);
  for (const auto& b : q) {
    const double c = b.dot(ctx.y);
    out -= c * c;
  }
  return std::max(out, 0.0);
}

double ebic(double rss_value, int s_size, int m_size, int mc_size) {
  if (s_size < 0) throw ConfigError("ebic: negative model size");
  if (m_size < 1 || mc_size < 1)
    throw ConfigError("ebic: candidate and row counts must be positive");
  if (!(rss_value > 0.0))
    throw DegenerateFitError("ebic: rss must be positive (perfect fit?)");
  return ebic_floored(rss_value, s_size, m_size, mc_size);
}

namespace {

SelectionPath forward_addition_impl(const DesignContext& ctx, int K,
                                    bool parallel) {
  const int m = ctx.num_candidates();
  const int mc = ctx.num_rows();
  if (K < 1) throw ConfigError("forward_addition: K must be >= 1");
  if (K > m)
    throw ConfigError("forward_addition: K exceeds candidate count");
  if (K > mc)
    throw ConfigError("forward_addition: K exceeds row count");
  const double rss0 = ctx.y.squaredNorm();
  if (!(rss0 > 0.0))
    throw DegenerateFitError(
        "forward_addition: zero response on regression rows");

  SelectionPath path;
  Eigen::VectorXd r = ctx.y;                    // current residual
  std::vector<Eigen::VectorXd> basis;           // orthonormal selected cols
  std::vector<double> sq(m, 0.0);               // ||projection onto basis||^2
  std::vector<char> taken(m, 0);
  std::vector<double> reduction(m);
  double cur_rss = rss0;

  for (int step = 1; step <= K; ++step) {
#pragma omp parallel for schedule(static) if (parallel)
    for (int c = 0; c < m; ++c) {
      if (taken[c]) {
        reduction[c] = -1.0;
        continue;
      }
      const double denom = ctx.col_norm2[c] - sq[c];
      if (!(denom > kRankTolSq * std::max(ctx.col_norm2[c], DBL_MIN))) {
        reduction[c] = -1.0;
        continue;
      }
      double dot = 0.0;
      for (int pos : ctx.col_rows[c]) dot += r[pos];
      const double corr = ctx.col_scale[c] * dot;
      reduction[c] = corr * corr / denom;
    }
    // Deterministic argmax over candidate positions (ascending node index);
    // a later candidate must beat the incumbent by more than kTieTol of the
    // current RSS, so near-ties resolve to the smaller node index. The
    // incremental denominators cannot resolve rank collapse below the
    // cancellation noise of `sq`, so the skip rule binds on the exact
    // orthogonalized residual of the winner; a collapsed winner leaves the
    // candidate pool and the argmax repeats within the step.
    int best = -1;
    Eigen::VectorXd v;
    double n2 = 0.0;
    for (;;) {
      best = -1;
      double best_red = 0.0;
      const double margin = kTieTol * cur_rss;
      for (int c = 0; c < m; ++c) {
        if (reduction[c] < 0.0) continue;
        if (best < 0 || reduction[c] > best_red + margin) {
          best = c;
          best_red = reduction[c];
        }
      }
      if (best < 0) break;
      v = ctx.dense_column(best);
      for (const auto& b : basis) v -= b.dot(v) * b;
      for (const auto& b : basis) v -= b.dot(v) * b;
      n2 = v.squaredNorm();
      if (n2 > kRankTolSq * std::max(ctx.col_norm2[best], DBL_MIN)) break;
      reduction[best] = -1.0;
      taken[best] = 1;
    }
    if (best < 0) {
      path.warnings.push_back(
          "all remaining candidates rank-deficient at step " +
          std::to_string(step) + "; path truncated");
      path.truncated = true;
      break;
    }
    taken[best] = 1;
    v /= std::sqrt(n2);
    const double c_r = v.dot(r);
    r -= c_r * v;
    cur_rss = std::max(cur_rss - c_r * c_r, 0.0);
    basis.push_back(std::move(v));
    path.picks.push_back(ctx.candidates[best]);
    path.rss.push_back(cur_rss);
    path.ebic.push_back(ebic_floored(cur_rss, step, m, mc));
    if (cur_rss <= kPerfectFitTol * rss0) {
      path.warnings.push_back("perfect fit reached at step " +
                              std::to_string(step) + "; path truncated");
      path.truncated = true;
      break;
    }
    if (step == K) break;
    const Eigen::VectorXd& q = basis.back();
#pragma omp parallel for schedule(static) if (parallel)
    for (int c = 0; c < m; ++c) {
      if (taken[c]) continue;
      double dot = 0.0;
      for (int pos : ctx.col_rows[c]) dot += q[pos];
      const double t = ctx.col_scale[c] * dot;
      sq[c] += t * t;
    }
  }
  if (path.picks.empty())
    throw DegenerateFitError("forward_addition: no candidate could be added");
  return path;
}

}  // namespace

SelectionPath forward_addition(const DesignContext& ctx, int K,
                               const ForwardOptions& opts) {
  return forward_addition_impl(ctx, K, opts.parallel);
}

SelectionPath forward_addition_serial(const DesignContext& ctx, int K) {
  return forward_addition_impl(ctx, K, false);
}

int select_model(const SelectionPath& path) {
  if (path.picks.empty())
    throw ConfigError("select_model: empty selection path");
  int k_star = 1;
  for (size_t k = 1; k < path.ebic.size(); ++k)
    if (path.ebic[k] < path.ebic[k_star - 1]) k_star = static_cast<int>(k) + 1;
  return k_star;
}

CmleResult cmle_on_rows(const DirectedGraph& g, const Eigen::VectorXd& Y,
                        const std::vector<int>& s, std::vector<int> rows) {
  const int n = g.num_nodes();
  if (Y.size() != n) throw ConfigError("cmle: response length != node count");
  std::vector<int> ss = sorted_unique_checked(s, n, "cmle: s");
  if (ss.empty()) throw ConfigError("cmle: empty selected set");
  rows = sorted_unique_checked(std::move(rows), n, "cmle: rows");
  const int p = static_cast<int>(ss.size());
  const int nr = static_cast<int>(rows.size());
  if (nr <= p)
    throw ConfigError("cmle: insufficient rows (" + std::to_string(nr) +
                      " rows for " + std::to_string(p) + " coefficients)");
  std::vector<int> row_pos(n, -1);
  for (int k = 0; k < nr; ++k) row_pos[rows[k]] = k;
  for (int j : ss)
    if (row_pos[j] >= 0)
      throw ConfigError("cmle: selected node " + std::to_string(j) +
                        " appears among regression rows");

  // Column j: positions (into rows) of the followers of j, scaled by Y_j.
  std::vector<std::vector<int>> cols(p);
  Eigen::VectorXd scale(p);
  for (int a = 0; a < p; ++a) {
    const int j = ss[a];
    for (const int* q = g.in_begin(j); q != g.in_end(j); ++q)
      if (row_pos[*q] >= 0) cols[a].push_back(row_pos[*q]);
    scale[a] = Y[j];
  }
  Eigen::VectorXd yr(nr);
  for (int k = 0; k < nr; ++k) yr[k] = Y[rows[k]];

  // Gram matrix through sorted-list intersections (columns are indicator
  // vectors times a scalar, so entries are scaled overlap counts).
  Eigen::MatrixXd G(p, p);
  Eigen::VectorXd b(p);
  for (int a = 0; a < p; ++a) {
    double dot = 0.0;
    for (int pos : cols[a]) dot += yr[pos];
    b[a] = scale[a] * dot;
    for (int c = a; c < p; ++c) {
      size_t ia = 0, ic = 0, overlap = 0;
      const auto& la = cols[a];
      const auto& lc = cols[c];
      while (ia < la.size() && ic < lc.size()) {
        if (la[ia] < lc[ic])
          ++ia;
        else if (la[ia] > lc[ic])
          ++ic;
        else {
          ++overlap;
          ++ia;
          ++ic;
        }
      }
      G(a, c) = G(c, a) = scale[a] * scale[c] * static_cast<double>(overlap);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const auto& ev = es.eigenvalues();
  const double lmax = ev[p - 1];
  if (!(lmax > 0.0) || ev[0] <= 1e-12 * lmax) {
    // Name the column with the smallest norm as the likely offender.
    int worst = 0;
    for (int a = 1; a < p; ++a)
      if (G(a, a) < G(worst, worst)) worst = a;
    throw SingularDesignError("cmle: singular Gram matrix (node " +
                                  std::to_string(ss[worst]) + ")",
                              ss[worst]);
  }
  const Eigen::MatrixXd V = es.eigenvectors();
  Eigen::VectorXd inv_ev = ev.cwiseInverse();
  const Eigen::MatrixXd Ginv =
      V * inv_ev.asDiagonal() * V.transpose();
  Eigen::VectorXd rho = Ginv * b;

  Eigen::VectorXd resid = yr;
  for (int a = 0; a < p; ++a) {
    const double w = scale[a] * rho[a];
    for (int pos : cols[a]) resid[pos] -= w;
  }
  CmleResult out;
  out.s = std::move(ss);
  out.rho = std::move(rho);
  out.sigma2 = resid.squaredNorm() / static_cast<double>(nr - p);
  out.rows_used = nr;
  out.se.resize(p);
  out.t.resize(p);
  out.p.resize(p);
  for (int a = 0; a < p; ++a) {
    const double var = out.sigma2 * Ginv(a, a);
    out.se[a] = var > 0.0 ? std::sqrt(var) : 0.0;
    if (out.se[a] > 0.0) {
      out.t[a] = out.rho[a] / out.se[a];
      out.p[a] = normal_two_sided_p(out.t[a]);
    } else {
      // Zero-variance (noiseless) fit: report a degenerate but finite line.
      out.t[a] = 0.0;
      out.p[a] = out.rho[a] == 0.0 ? 1.0 : 0.0;
    }
  }
  return out;
}

CmleResult cmle(const DirectedGraph& g, const Eigen::VectorXd& Y,
                const std::vector<int>& s) {
  const int n = g.num_nodes();
  std::vector<int> ss = sorted_unique_checked(s, n, "cmle: s");
  std::vector<int> rows;
  rows.reserve(n - ss.size());
  size_t si = 0;
  for (int v = 0; v < n; ++v) {
    if (si < ss.size() && ss[si] == v) {
      ++si;
    } else {
      rows.push_back(v);
    }
  }
  return cmle_on_rows(g, Y, ss, std::move(rows));
}

std::pair<double, double> r_squared(const DesignContext& ctx,
                                    const std::vector<int>& s) {
  const double resid = rss(ctx, s);
  const double mean = ctx.y.mean();
  const double tss = (ctx.y.array() - mean).matrix().squaredNorm();
  if (!(tss > 0.0))
    throw DegenerateFitError("r_squared: constant response on rows");
  const double r2 = 1.0 - resid / tss;
  const int mc = ctx.num_rows();
  const int k = static_cast<int>(s.size());
  double adj = r2;
  if (mc - k - 1 > 0)
    adj = 1.0 - (1.0 - r2) * static_cast<double>(mc - 1) /
                    static_cast<double>(mc - k - 1);
  return {r2, adj};
}

FitResult fit_on_design(const DirectedGraph& g, const Eigen::VectorXd& Y,
                        const DesignContext& ctx, int scale_n,
                        const std::vector<int>& row_base,
                        const FitConfig& cfg) {
  const int m = ctx.num_candidates();
  const int mc = ctx.num_rows();
  int K = static_cast<int>(
      std::floor(std::pow(static_cast<double>(scale_n), 5.0 / 9.0) + 1e-9));
  if (cfg.K > K) K = cfg.K;
  K = std::min({K, m, mc - 1});
  if (K < 1) throw ConfigError("fit: no admissible forward-addition budget");

  FitResult out;
  out.path = run_stage("forward",
                       [&] { return forward_addition(ctx, K, cfg.forward); });
  out.k_star = select_model(out.path);
  out.path.k_star = out.k_star;
  out.selected.assign(out.path.picks.begin(),
                      out.path.picks.begin() + out.k_star);
  std::sort(out.selected.begin(), out.selected.end());

  CmleResult cm = run_stage("cmle", [&] {
    std::vector<int> rows;
    rows.reserve(row_base.size());
    std::set_difference(row_base.begin(), row_base.end(),
                        out.selected.begin(), out.selected.end(),
                        std::back_inserter(rows));
    return cmle_on_rows(g, Y, out.selected, std::move(rows));
  });
  out.rho_hat = std::move(cm.rho);
  out.se = std::move(cm.se);
  out.t_value = std::move(cm.t);
  out.p_value = std::move(cm.p);
  out.sigma2_hat = cm.sigma2;

  auto r2 = run_stage("r2", [&] { return r_squared(ctx, out.selected); });
  out.r2 = r2.first;
  out.adj_r2 = r2.second;
  out.m_size = m;
  out.mc_size = mc;
  out.warnings = out.path.warnings;
  return out;
}

FitResult fit(const DirectedGraph& g, const Eigen::VectorXd& Y,
              const FitConfig& cfg) {
  const int n = g.num_nodes();
  if (n < 3) throw ConfigError("fit: need at least 3 nodes");
  if (Y.size() != n) throw ConfigError("fit: response length != node count");
  if (!Y.allFinite()) throw ConfigError("fit: non-finite response value");
  if (Y.squaredNorm() == 0.0)
    throw DegenerateFitError("fit: response is identically zero");

  DesignContext ctx = run_stage("screen", [&] {
    return DesignContext::standard(g, Y, cfg.screen);
  });
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return fit_on_design(g, Y, ctx, n, all, cfg);
}

FullObjective full_objective(const DirectedGraph& g, const Eigen::VectorXd& Y,
                             const std::vector<int>& s, double mu,
                             const Eigen::VectorXd& rho_s, double sigma2) {
  const int n = g.num_nodes();
  std::vector<int> ss = sorted_unique_checked(s, n, "full_objective: s");
  if (ss.empty()) throw ConfigError("full_objective: empty set");
  if (rho_s.size() != static_cast<int>(ss.size()))
    throw ConfigError("full_objective: rho length != |s|");
  if (Y.size() != n)
    throw ConfigError("full_objective: response length != node count");
  if (!(sigma2 >= 0.0)) throw ConfigError("full_objective: sigma2 < 0");

  std::vector<char> in_s(n, 0);
  std::vector<int> pos_in_s(n, -1);
  for (size_t a = 0; a < ss.size(); ++a) {
    in_s[ss[a]] = 1;
    pos_in_s[ss[a]] = static_cast<int>(a);
  }
  // Predicted influence on complement rows, accumulated column-wise.
  Eigen::VectorXd pred = Eigen::VectorXd::Zero(n);
  for (size_t a = 0; a < ss.size(); ++a) {
    const int j = ss[a];
    const double w = rho_s[static_cast<int>(a)] * Y[j];
    for (const int* q = g.in_begin(j); q != g.in_end(j); ++q)
      if (!in_s[*q]) pred[*q] += w;
  }
  double qval = 0.0;
  for (int v = 0; v < n; ++v) {
    if (in_s[v]) continue;
    const double d = Y[v] - pred[v];
    qval += d * d;
  }

  const int p = static_cast<int>(ss.size());
  Eigen::MatrixXd h1 = Eigen::MatrixXd::Identity(p, p);
  for (int a = 0; a < p; ++a)
    for (int c = 0; c < p; ++c)
      if (a != c && g.has_edge(ss[a], ss[c])) h1(a, c) -= rho_s[c];
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(h1);
  const double det = lu.determinant();
  if (!(std::fabs(det) > 1e-12))
    throw SingularDesignError("full_objective: singular H1 block");
  Eigen::VectorXd ys(p);
  for (int a = 0; a < p; ++a) ys[a] = Y[ss[a]];
  const Eigen::VectorXd marg = h1 * ys - Eigen::VectorXd::Constant(p, mu);
  FullObjective out;
  out.q = qval;
  out.q_tilde =
      qval + marg.squaredNorm() + 2.0 * sigma2 * std::log(std::fabs(det));
  return out;
}

ConditionReport condition_check(const DirectedGraph& g, int set_size,
                                int subsample_n, int reps,
                                std::uint64_t seed) {
  const int n = g.num_nodes();
  if (subsample_n < 2 || subsample_n > n)
    throw ConfigError("condition_check: subsample size out of range");
  if (set_size < 1) throw ConfigError("condition_check: set_size must be >= 1");
  if (reps < 1) throw ConfigError("condition_check: reps must be >= 1");
  Rng rng(seed);
  ConditionReport rep;
  rep.reps = reps;
  bool first = true;
  std::vector<int> pool(n);
  for (int r = 0; r < reps; ++r) {
    std::iota(pool.begin(), pool.end(), 0);
    for (int t = 0; t < subsample_n; ++t) {
      const int pick = t + static_cast<int>(
                               rng.uniform_int(static_cast<uint64_t>(n - t)));
      std::swap(pool[t], pool[pick]);
    }
    std::vector<int> sample(pool.begin(), pool.begin() + subsample_n);
    std::sort(sample.begin(), sample.end());
    DirectedGraph sub = g.induced_subgraph(sample);
    std::vector<int> mset = screen_candidates(sub, ScreenConfig{});
    const int k = std::min<int>(set_size, static_cast<int>(mset.size()));
    // Random size-k subset of the screened candidates.
    for (int t = 0; t < k; ++t) {
      const int pick =
          t + static_cast<int>(rng.uniform_int(
                  static_cast<uint64_t>(mset.size() - t)));
      std::swap(mset[t], mset[pick]);
    }
    std::vector<int> sel(mset.begin(), mset.begin() + k);
    std::sort(sel.begin(), sel.end());
    std::vector<char> in_sel(sub.num_nodes(), 0);
    for (int v : sel) in_sel[v] = 1;

    // Follower-position lists restricted to S^c rows and to M^c rows.
    std::vector<int> mset_sorted(mset.begin() + k, mset.end());
    std::sort(mset_sorted.begin(), mset_sorted.end());
    std::vector<char> in_m(sub.num_nodes(), 0);
    for (int v : sel) in_m[v] = 1;
    for (int v : mset_sorted) in_m[v] = 1;

    auto gram = [&](auto&& keep_row, bool scale_by_degree) {
      std::vector<std::vector<int>> cols(k);
      for (int a = 0; a < k; ++a)
        for (const int* q = sub.in_begin(sel[a]); q != sub.in_end(sel[a]); ++q)
          if (keep_row(*q)) cols[a].push_back(*q);
      Eigen::MatrixXd m2(k, k);
      for (int a = 0; a < k; ++a)
        for (int c = a; c < k; ++c) {
          size_t ia = 0, ic = 0, overlap = 0;
          while (ia < cols[a].size() && ic < cols[c].size()) {
            if (cols[a][ia] < cols[c][ic])
              ++ia;
            else if (cols[a][ia] > cols[c][ic])
              ++ic;
            else {
              ++overlap;
              ++ia;
              ++ic;
            }
          }
          m2(a, c) = m2(c, a) = static_cast<double>(overlap);
        }
      if (scale_by_degree) {
        Eigen::VectorXd sc(k);
        for (int a = 0; a < k; ++a) {
          const int deg = sub.in_degree(sel[a]);
          sc[a] = deg > 0 ? 1.0 / std::sqrt(static_cast<double>(deg)) : 0.0;
        }
        m2 = sc.asDiagonal() * m2 * sc.asDiagonal();
      } else {
        m2 /= static_cast<double>(sub.num_nodes());
      }
      return m2;
    };

    const Eigen::MatrixXd g1 = gram([&](int v) { return !in_sel[v]; }, false);
    const Eigen::MatrixXd g2 = gram([&](int v) { return !in_m[v]; }, true);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> e1(g1), e2(g2);
    const double l1lo = e1.eigenvalues()[0], l1hi = e1.eigenvalues()[k - 1];
    const double l2lo = e2.eigenvalues()[0], l2hi = e2.eigenvalues()[k - 1];
    if (first) {
      rep.g1_min = l1lo;
      rep.g1_max = l1hi;
      rep.g2_min = l2lo;
      rep.g2_max = l2hi;
      first = false;
    } else {
      rep.g1_min = std::min(rep.g1_min, l1lo);
      rep.g1_max = std::max(rep.g1_max, l1hi);
      rep.g2_min = std::min(rep.g2_min, l2lo);
      rep.g2_max = std::max(rep.g2_max, l2hi);
    }
  }
  return rep;
}

}  // namespace snirkit
