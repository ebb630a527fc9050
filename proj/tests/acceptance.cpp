// Release gate: every criterion is measured end to end and reported as one
// PASS/FAIL line with the observed values next to the thresholds. Exit code
// is nonzero when any executed criterion fails.
//
// Usage: acceptance [--list] [--only K] [--seed-offset S]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "snirkit/baselines.hpp"
#include "snirkit/centrality.hpp"
#include "snirkit/errors.hpp"
#include "snirkit/ext.hpp"
#include "snirkit/generators.hpp"
#include "snirkit/graph.hpp"
#include "snirkit/rng.hpp"
#include "snirkit/simlab.hpp"
#include "snirkit/snir.hpp"
#include "snirkit/stats.hpp"

using namespace snirkit;

namespace {

std::uint64_t g_offset = 0;  // --seed-offset shifts every pinned seed

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

double tpr_of(const std::vector<int>& selected, const std::vector<int>& s1) {
  std::vector<int> a = selected, b = s1, inter;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(inter));
  return b.empty() ? 0.0
                   : static_cast<double>(inter.size()) /
                         static_cast<double>(b.size());
}

// Draws response data from a freshly built truth, rebuilding the whole truth
// (membership and coefficients) whenever the influential block is unstable —
// the same protocol the study driver follows. The retry budget is wider than
// the driver's because a single exhausted draw here fails the criterion.
template <typename MakeTruth>
Eigen::VectorXd draw_stable(const DirectedGraph& g, TruthSpec& truth,
                            Rng& rng, MakeTruth make) {
  for (int attempt = 0;; ++attempt) {
    truth = make();
    try {
      return gen_snir_data(g, truth, rng);
    } catch (const UnstableTruthError&) {
      if (attempt >= 20) throw;
    }
  }
}

// ---------------------------------------------------------------------------
// 1. Replication study on the medium stochastic block preset.

Outcome crit_medium_study() {
  StudyConfig cfg;
  cfg.gen = make_preset("sbm", 2500);
  cfg.s1_size = 10;
  cfg.reps = 100;
  cfg.seed = 0 + g_offset;
  const auto t0 = std::chrono::steady_clock::now();
  const StudyResult res = run_study(cfg);
  const auto t1 = std::chrono::steady_clock::now();
  const double per_rep =
      std::chrono::duration<double>(t1 - t0).count() / cfg.reps;
  Outcome o;
  o.pass = res.mean.tpr >= 0.98 && res.mean.fpr <= 0.005 &&
           res.mean.cfp >= 0.90 && res.mean.err <= 0.08 && per_rep <= 2.0;
  o.detail = "TPR=" + fmt(res.mean.tpr) + " (>=0.98), FPR=" +
             fmt(res.mean.fpr) + " (<=0.005), CFP=" + fmt(res.mean.cfp) +
             " (>=0.90), Err=" + fmt(res.mean.err) + " (<=0.08), " +
             fmt(per_rep, 3) + " s/rep (<=2)";
  return o;
}

// ---------------------------------------------------------------------------
// 2. Replication study on the large sparse preset.

Outcome crit_large_study() {
  StudyConfig cfg;
  cfg.gen = make_preset("er", 15000);
  cfg.s1_size = 10;
  cfg.reps = 30;
  cfg.seed = 0 + g_offset;
  const StudyResult res = run_study(cfg);
  Outcome o;
  o.pass = res.mean.tpr >= 0.99 && res.mean.cfp >= 0.90 &&
           res.mean.err <= 0.04 && res.secs_per_fit <= 10.0;
  o.detail = "TPR=" + fmt(res.mean.tpr) + " (>=0.99), CFP=" +
             fmt(res.mean.cfp) + " (>=0.90), Err=" + fmt(res.mean.err) +
             " (<=0.04), fit=" + fmt(res.secs_per_fit, 3) + " s (<=10)";
  return o;
}

// ---------------------------------------------------------------------------
// 3. Forward addition equals the exhaustive per-step search.

std::vector<int> exhaustive_picks(const DesignContext& ctx, int K) {
  const int r = static_cast<int>(ctx.rows.size());
  const int m = static_cast<int>(ctx.candidates.size());
  Eigen::VectorXd y(r);
  for (int i = 0; i < r; ++i) y[i] = ctx.y[i];
  std::vector<Eigen::VectorXd> cols(m);
  std::vector<double> orig_norm2(m);
  for (int c = 0; c < m; ++c) {
    cols[c] = ctx.dense_column(c);
    orig_norm2[c] = cols[c].squaredNorm();
  }
  std::vector<int> chosen;
  std::vector<char> used(m, 0);
  double cur_rss = y.squaredNorm();
  const double rss0 = cur_rss;
  for (int step = 0; step < K; ++step) {
    if (cur_rss <= 1e-13 * rss0) break;
    Eigen::MatrixXd base(r, chosen.size());
    for (std::size_t k = 0; k < chosen.size(); ++k)
      base.col(static_cast<int>(k)) = cols[chosen[k]];
    int best = -1;
    double best_rss = 0.0;
    for (int c = 0; c < m; ++c) {
      if (used[c] || orig_norm2[c] <= 0.0) continue;
      // Residual column against the current selection: the rank guard.
      Eigen::VectorXd resid = cols[c];
      if (chosen.size() > 0)
        resid -= base * base.colPivHouseholderQr().solve(cols[c]);
      if (resid.squaredNorm() <= 1e-20 * orig_norm2[c]) continue;
      Eigen::MatrixXd trial(r, chosen.size() + 1);
      if (chosen.size() > 0) trial.leftCols(chosen.size()) = base;
      trial.col(static_cast<int>(chosen.size())) = cols[c];
      const Eigen::VectorXd beta = trial.colPivHouseholderQr().solve(y);
      const double rss_c = (y - trial * beta).squaredNorm();
      if (best < 0 || rss_c < best_rss - 1e-9 * cur_rss) {
        best = c;
        best_rss = rss_c;
      }
    }
    if (best < 0) break;
    used[best] = 1;
    chosen.push_back(best);
    cur_rss = std::max(best_rss, 0.0);
  }
  std::vector<int> picks;
  for (int c : chosen) picks.push_back(ctx.candidates[c]);
  return picks;
}

Outcome crit_oracle_equivalence() {
  int mismatches = 0, trials = 0;
  for (int t = 0; t < 200; ++t) {
    Rng rng = Rng::for_replication(303 + g_offset, t);
    const int n = 20 + static_cast<int>(rng.uniform_int(41));
    const double p = rng.uniform(0.08, 0.3);
    const DirectedGraph g = gen_er(n, p, rng.next_u64());
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) y[i] = rng.normal(1.0, 1.0);
    ScreenConfig sc;
    sc.m = 2 + static_cast<int>(rng.uniform_int(7));
    const int K =
        std::min<int>(sc.m, 1 + static_cast<int>(rng.uniform_int(3)));
    const DesignContext ctx = DesignContext::standard(g, y, sc);
    const SelectionPath par = forward_addition(ctx, K);
    const SelectionPath ser = forward_addition_serial(ctx, K);
    const std::vector<int> oracle = exhaustive_picks(ctx, K);
    ++trials;
    if (par.picks != oracle || ser.picks != par.picks) ++mismatches;
  }
  Outcome o;
  o.pass = mismatches == 0 && trials == 200;
  o.detail = std::to_string(mismatches) + " mismatches over " +
             std::to_string(trials) + " instances (need 0)";
  return o;
}

// ---------------------------------------------------------------------------
// 4. Noiseless exactness at the smallest preset sizes.

Outcome crit_noiseless_exact() {
  const std::pair<const char*, int> gens[] = {
      {"er", 5000}, {"sbm", 1000}, {"powerlaw", 5000}};
  int total_ok = 0;
  double worst = 0.0;
  std::string per;
  for (int gi = 0; gi < 3; ++gi) {
    int ok = 0;
    for (int s = 0; s < 100; ++s) {
      Rng rng = Rng::for_replication(404 + g_offset,
                                     static_cast<std::uint64_t>(gi) * 1000 + s);
      GeneratorSpec spec = make_preset(gens[gi].first, gens[gi].second);
      spec.seed = rng.next_u64();
      const DirectedGraph g = generate(spec);
      TruthSpec truth;
      const Eigen::VectorXd y = draw_stable(g, truth, rng, [&] {
        TruthSpec t = pick_truth(g, TruthMode::RandomFromM, 10, rng);
        t.noise.sigma = 1e-6;
        return t;
      });
      const FitResult fr = fit(g, y);
      bool good = fr.selected == truth.s1;
      if (good)
        for (std::size_t i = 0; i < truth.s1.size(); ++i) {
          const double d =
              std::fabs(fr.rho_hat[static_cast<int>(i)] - truth.rho[i]);
          worst = std::max(worst, d);
          if (d > 1e-4) good = false;
        }
      ok += good;
    }
    total_ok += ok;
    per += std::string(gens[gi].first) + "=" + std::to_string(ok) + "/100 ";
  }
  Outcome o;
  o.pass = total_ok == 300;
  o.detail = per + "(need 100 each), max|rho_hat-rho|=" + fmt(worst, 2);
  return o;
}

// ---------------------------------------------------------------------------
// 5. Marginal share of the full objective shrinks with network size.

Outcome crit_objective_gap() {
  const int sizes[] = {500, 1000, 2000};
  double means[3] = {0, 0, 0};
  for (int ni = 0; ni < 3; ++ni) {
    double acc = 0.0;
    for (int s = 0; s < 50; ++s) {
      Rng rng = Rng::for_replication(505 + g_offset,
                                     static_cast<std::uint64_t>(ni) * 100 + s);
      GeneratorSpec spec = make_preset("er", sizes[ni]);
      spec.seed = rng.next_u64();
      const DirectedGraph g = generate(spec);
      TruthSpec truth;
      const Eigen::VectorXd y = draw_stable(g, truth, rng, [&] {
        return pick_truth(g, TruthMode::RandomFromM, 5, rng);
      });
      Eigen::VectorXd rho_s(5);
      for (int i = 0; i < 5; ++i) rho_s[i] = truth.rho[i];
      const FullObjective fo =
          full_objective(g, y, truth.s1, truth.mu, rho_s, 1.0);
      acc += (fo.q_tilde - fo.q) / fo.q;
    }
    means[ni] = acc / 50.0;
  }
  Outcome o;
  o.pass = means[0] > means[1] && means[1] > means[2] &&
           means[2] <= 3.0 * 5.0 / 2000.0;
  o.detail = "mean gap share " + fmt(means[0]) + " > " + fmt(means[1]) +
             " > " + fmt(means[2]) + " (last <= " + fmt(3.0 * 5.0 / 2000.0) +
             ")";
  return o;
}

// ---------------------------------------------------------------------------
// 6. Estimator calibration on a fixed design.

Outcome crit_inference_calibration() {
  GeneratorSpec spec = make_preset("er", 1500);
  spec.seed = 606 + g_offset;
  const DirectedGraph g = generate(spec);
  const std::vector<int> m = screen_candidates(g, {});

  // Three influential candidates, plus one zero-coefficient column whose
  // held response must be far enough from zero to carry a usable column.
  TruthSpec truth;
  truth.s1 = {m[0], m[1], m[2]};
  std::sort(truth.s1.begin(), truth.s1.end());
  truth.rho = {0.6, 0.5, 0.7};
  truth.mu = 5.0;
  truth.noise.sigma = 0.0;
  Rng rng0(1);
  const Eigen::VectorXd y0 = gen_snir_data(g, truth, rng0);
  int j0 = -1;
  for (std::size_t i = 3; i < m.size(); ++i)
    if (std::fabs(y0[m[i]]) > 0.5) {
      j0 = m[i];
      break;
    }
  if (j0 < 0) return {false, "no usable zero-coefficient column"};

  std::vector<int> s = truth.s1;
  s.push_back(j0);
  std::sort(s.begin(), s.end());
  std::vector<int> rows;
  for (int v = 0; v < g.num_nodes(); ++v)
    if (!std::binary_search(s.begin(), s.end(), v)) rows.push_back(v);
  const int pos_j0 = static_cast<int>(
      std::lower_bound(s.begin(), s.end(), j0) - s.begin());

  const int reps = 500;
  std::vector<std::vector<double>> rhos(4), ses(4);
  std::vector<double> pvals;
  for (int r = 0; r < reps; ++r) {
    Rng rng = Rng::for_replication(616 + g_offset, r);
    Eigen::VectorXd y = y0;
    for (int i : rows) y[i] = y0[i] + rng.normal(0.0, 1.0);
    const CmleResult est = cmle(g, y, s);
    for (int k = 0; k < 4; ++k) {
      rhos[k].push_back(est.rho[k]);
      ses[k].push_back(est.se[k]);
    }
    pvals.push_back(est.p[pos_j0]);
  }
  bool ratios_ok = true;
  double worst_ratio = 1.0;
  for (int k = 0; k < 4; ++k) {
    const double ratio = sd_of(rhos[k]) / mean_of(ses[k]);
    if (std::fabs(ratio - 1.0) > std::fabs(worst_ratio - 1.0))
      worst_ratio = ratio;
    if (ratio < 0.8 || ratio > 1.2) ratios_ok = false;
  }
  const double ks = ks_uniform_stat(pvals);
  const double ks_crit = 1.628 / std::sqrt(static_cast<double>(reps));
  Outcome o;
  o.pass = ratios_ok && ks <= ks_crit;
  o.detail = "worst sd/SE ratio=" + fmt(worst_ratio) +
             " (in [0.8,1.2]), KS=" + fmt(ks, 3) + " (<=" + fmt(ks_crit, 3) +
             ")";
  return o;
}

// ---------------------------------------------------------------------------
// 7. Against the scalar autoregressive baseline.

Outcome crit_against_sar() {
  int wins = 0;
  for (int s = 0; s < 100; ++s) {
    Rng rng = Rng::for_replication(707 + g_offset, s);
    GeneratorSpec spec = make_preset("sbm", 2500);
    spec.seed = rng.next_u64();
    const DirectedGraph g = generate(spec);
    TruthSpec truth;
    const Eigen::VectorXd y = draw_stable(g, truth, rng, [&] {
      return pick_truth(g, TruthMode::RandomFromM, 10, rng);
    });
    const FitResult fr = fit(g, y);
    const SarFit sar = sar_fit(g, y);
    wins += fr.r2 > sar.r2;
  }

  // Scalar-coefficient recovery on data from the baseline's own model. A
  // directed cycle keeps each weighted row a single response; row-averaged
  // dense graphs leave the coefficient nearly unidentified at this size.
  const int n = 2000;
  std::vector<std::pair<int, int>> cyc;
  cyc.reserve(n);
  for (int i = 0; i < n; ++i) cyc.emplace_back(i, (i + 1) % n);
  const DirectedGraph g = DirectedGraph::from_edges(n, cyc);
  Rng rng(718 + g_offset);
  Eigen::VectorXd eps(n);
  for (int i = 0; i < n; ++i) eps[i] = rng.normal(0.0, 1.0);
  Eigen::VectorXd y = eps, wy(n);
  for (int it = 0; it < 120; ++it) {
    for (int i = 0; i < n; ++i) wy[i] = y[(i + 1) % n];
    y = eps + 0.3 * wy;
  }
  const SarFit rec = sar_fit(g, y);
  Outcome o;
  o.pass = wins >= 90 && std::fabs(rec.rho - 0.3) <= 0.05;
  o.detail = "R2 wins " + std::to_string(wins) + "/100 (>=90), rho_hat=" +
             fmt(rec.rho) + " (0.3 +- 0.05)";
  return o;
}

// ---------------------------------------------------------------------------
// 8. Impact ranking across selection rules.

Outcome crit_impact_ranking() {
  int firsts = 0;
  for (int s = 0; s < 100; ++s) {
    Rng rng = Rng::for_replication(808 + g_offset, s);
    GeneratorSpec spec = make_preset("sbm", 1200);
    spec.seed = rng.next_u64();
    const DirectedGraph g = generate(spec);
    TruthSpec truth;
    const Eigen::VectorXd y = draw_stable(g, truth, rng, [&] {
      return pick_truth(g, TruthMode::RandomFromM, 8, rng);
    });
    const ImpactReport rep = compare_methods(g, y);
    const double snir_dr = rep.methods.at("snir").delta_r;
    bool first = true;
    for (const auto& [name, impact] : rep.methods)
      if (name != "snir" && impact.delta_r > snir_dr + 1e-12) first = false;
    firsts += first;
  }
  Outcome o;
  o.pass = firsts >= 90;
  o.detail = "ranked first " + std::to_string(firsts) + "/100 (>=90)";
  return o;
}

// ---------------------------------------------------------------------------
// 9. Designed truths: who each selection rule is built to find.

Outcome crit_designed_truths() {
  GeneratorSpec surrogate;
  surrogate.kind = GeneratorSpec::Kind::SBM;
  surrogate.n = 2500;
  surrogate.k_blocks = 5;
  surrogate.p_in = 0.0091667;  // mean edge probability ~0.55%
  surrogate.p_out = 0.0045833;

  double snir_tpr[3] = {0, 0, 0};
  double resp_tpr[3] = {0, 0, 0};
  double topo_tpr[3] = {0, 0, 0};
  const int reps = 100;
  for (int setting = 0; setting < 3; ++setting) {
    for (int s = 0; s < reps; ++s) {
      Rng rng = Rng::for_replication(909 + g_offset,
                                     static_cast<std::uint64_t>(setting) * 1000 + s);
      GeneratorSpec spec = surrogate;
      spec.seed = rng.next_u64();
      const DirectedGraph g = generate(spec);
      const std::vector<int> m = screen_candidates(g, {});

      TruthSpec truth;
      Eigen::VectorXd y;
      if (setting == 0) {
        // Influence assigned to the highest responses of a pilot draw, with
        // the pilot's responses held fixed for the final data.
        TruthSpec pilot;
        const Eigen::VectorXd y_pilot = draw_stable(g, pilot, rng, [&] {
          std::vector<int> pool = m;
          TruthSpec t;
          for (int a = 0; a < 10; ++a) {
            const int pick =
                a + static_cast<int>(rng.uniform_int(
                        static_cast<std::uint64_t>(pool.size() - a)));
            std::swap(pool[a], pool[pick]);
          }
          t.s1.assign(pool.begin(), pool.begin() + 10);
          std::sort(t.s1.begin(), t.s1.end());
          t.rho.resize(10);
          for (auto& r : t.rho) r = rng.uniform(0.2, 0.3);
          t.mu = 10.0;
          return t;
        });
        truth = pick_truth(g, TruthMode::TopResponse, 10, rng, &y_pilot);
        truth.fixed_y_s1.resize(10);
        for (int a = 0; a < 10; ++a)
          truth.fixed_y_s1[a] = y_pilot[truth.s1[a]];
        // Two mildly positive coefficients on the two weakest held
        // responses, strong negatives everywhere else: regeneration is
        // pulled downward overall, and the little that is pushed up cannot
        // clear the weakest held value, so the "highest responses" reading
        // of this truth survives regeneration.
        std::vector<int> order(10);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
          return truth.fixed_y_s1[a] < truth.fixed_y_s1[b];
        });
        truth.rho.assign(10, 0.0);
        truth.rho[order[0]] = rng.uniform(0.25, 0.5);
        truth.rho[order[1]] = rng.uniform(0.25, 0.5);
        for (auto& r : truth.rho)
          if (r == 0.0) r = rng.uniform(-0.999, -0.5);
        y = gen_snir_data(g, truth, rng);
      } else if (setting == 1) {
        y = draw_stable(g, truth, rng, [&] {
          return pick_truth(g, TruthMode::TopInDegree, 10, rng);
        });
      } else {
        y = draw_stable(g, truth, rng, [&] {
          return pick_truth(g, TruthMode::RandomFromM, 10, rng);
        });
      }

      const FitResult fr = fit(g, y);
      snir_tpr[setting] += tpr_of(fr.selected, truth.s1);
      SelectionRule rule;
      rule.size = 10;
      rule.kind = RuleKind::Response;
      resp_tpr[setting] += tpr_of(select_by_rule(g, y, rule), truth.s1);
      rule.kind = RuleKind::InDegree;
      topo_tpr[setting] += tpr_of(select_by_rule(g, y, rule), truth.s1);
    }
    snir_tpr[setting] /= reps;
    resp_tpr[setting] /= reps;
    topo_tpr[setting] /= reps;
  }
  Outcome o;
  const bool snir_ok =
      snir_tpr[0] >= 0.95 && snir_tpr[1] >= 0.95 && snir_tpr[2] >= 0.95;
  const bool resp_ok =
      resp_tpr[0] >= 0.995 && resp_tpr[1] < 1.0 && resp_tpr[2] < 1.0;
  const bool topo_ok =
      topo_tpr[1] == 1.0 && topo_tpr[0] < 1.0 && topo_tpr[2] < 1.0;
  o.pass = snir_ok && resp_ok && topo_ok;
  o.detail = "model TPR=" + fmt(snir_tpr[0]) + "/" + fmt(snir_tpr[1]) + "/" +
             fmt(snir_tpr[2]) + " (all >=0.95); response TPR=" +
             fmt(resp_tpr[0]) + "/" + fmt(resp_tpr[1]) + "/" +
             fmt(resp_tpr[2]) + " (1 only first); topology TPR=" +
             fmt(topo_tpr[0]) + "/" + fmt(topo_tpr[1]) + "/" +
             fmt(topo_tpr[2]) + " (1 only second)";
  return o;
}

// ---------------------------------------------------------------------------
// 10. Detection sweep against the injected coefficient.

Outcome crit_detection_sweep() {
  // Sparse mixing (mean degree ~14) keeps the detection transition inside
  // the sweep grid; at the dense default every grid point saturates and the
  // rank correlation collapses onto ties.
  GeneratorSpec spec;
  spec.kind = GeneratorSpec::Kind::SBM;
  spec.n = 2500;
  spec.k_blocks = 5;
  spec.p_in = 0.0091667;
  spec.p_out = 0.0045833;
  spec.seed = 1010 + g_offset;
  const DirectedGraph g = generate(spec);
  Rng rng(1011 + g_offset);
  TruthSpec truth;
  const Eigen::VectorXd y = draw_stable(g, truth, rng, [&] {
    TruthSpec t = pick_truth(g, TruthMode::RandomFromM, 10, rng);
    t.noise.sigma = 0.5;
    return t;
  });
  Eigen::VectorXd rho_base(10);
  for (int i = 0; i < 10; ++i) rho_base[i] = truth.rho[i];
  const auto curve = snr_sweep(g, y, truth.s1, rho_base, default_sweep_grid(),
                               100, 0.5, 1012 + g_offset);
  std::vector<double> coefs, dets;
  for (const auto& pt : curve) {
    coefs.push_back(pt.coef);
    dets.push_back(pt.detection);
  }
  const double rho = spearman(coefs, dets);
  Outcome o;
  o.pass = rho >= 0.9 && dets.back() >= 0.95;
  o.detail = "Spearman=" + fmt(rho, 3) + " (>=0.9), detection@0.3=" +
             fmt(dets.back(), 3) + " (>=0.95)";
  return o;
}

// ---------------------------------------------------------------------------
// 11. Centrality against exhaustive path enumeration.

void brute_centrality(const DirectedGraph& g, std::vector<double>& betw,
                      std::vector<double>& harm) {
  const int n = g.num_nodes();
  betw.assign(n, 0.0);
  harm.assign(n, 0.0);
  for (int src = 0; src < n; ++src) {
    // BFS over "follows" edges from src.
    std::vector<int> dist(n, -1);
    dist[src] = 0;
    std::vector<int> q = {src};
    for (std::size_t h = 0; h < q.size(); ++h) {
      const int v = q[h];
      for (const int* w = g.out_begin(v); w != g.out_end(v); ++w)
        if (dist[*w] < 0) {
          dist[*w] = dist[v] + 1;
          q.push_back(*w);
        }
    }
    for (int dst = 0; dst < n; ++dst) {
      if (dst == src || dist[dst] < 0) continue;
      harm[dst] += 1.0 / dist[dst];
      // Enumerate every shortest src->dst path and count pass-throughs.
      std::vector<std::vector<int>> paths;
      std::vector<int> stack = {src};
      std::function<void(int)> dfs = [&](int v) {
        if (v == dst) {
          paths.push_back(stack);
          return;
        }
        for (const int* w = g.out_begin(v); w != g.out_end(v); ++w)
          if (dist[*w] == dist[v] + 1 && dist[dst] - dist[*w] >= 0) {
            stack.push_back(*w);
            dfs(*w);
            stack.pop_back();
          }
      };
      dfs(src);
      if (paths.empty()) continue;
      std::vector<int> through(n, 0);
      for (const auto& pth : paths)
        for (std::size_t i = 1; i + 1 < pth.size(); ++i) ++through[pth[i]];
      for (int v = 0; v < n; ++v)
        if (through[v] > 0)
          betw[v] += static_cast<double>(through[v]) /
                     static_cast<double>(paths.size());
    }
  }
}

Outcome crit_centrality_oracle() {
  double worst_b = 0.0, worst_h = 0.0;
  for (int t = 0; t < 500; ++t) {
    Rng rng = Rng::for_replication(1111 + g_offset, t);
    const int n = 4 + static_cast<int>(rng.uniform_int(9));
    const double p = rng.uniform(0.15, 0.5);
    const DirectedGraph g = gen_er(n, p, rng.next_u64());
    std::vector<double> bb, bh;
    brute_centrality(g, bb, bh);
    const std::vector<double> fb = betweenness(g);
    const std::vector<double> fh = harmonic(g);
    for (int v = 0; v < n; ++v) {
      worst_b = std::max(worst_b, std::fabs(fb[v] - bb[v]));
      worst_h = std::max(worst_h, std::fabs(fh[v] - bh[v]));
    }
  }
  Outcome o;
  o.pass = worst_b <= 1e-10 && worst_h <= 1e-12;
  o.detail = "max |betweenness diff|=" + fmt(worst_b, 2) +
             " (<=1e-10), max |harmonic diff|=" + fmt(worst_h, 2) +
             " (<=1e-12) over 500 digraphs";
  return o;
}

// ---------------------------------------------------------------------------
// 12. Heteroskedastic noise with profiled covariates.

Outcome crit_hetero_covariates() {
  StudyConfig cfg;
  cfg.gen = make_preset("sbm", 2500);
  cfg.s1_size = 10;
  cfg.reps = 100;
  cfg.seed = 1212 + g_offset;
  cfg.noise.heteroskedastic = true;
  cfg.cov_p = 3;
  cfg.cov_ar = 0.5;
  const StudyResult res = run_study(cfg);
  Outcome o;
  o.pass = res.mean.tpr >= 0.95;
  o.detail = "TPR=" + fmt(res.mean.tpr) + " (>=0.95), Err=" +
             fmt(res.mean.err);
  return o;
}

// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const Criterion kCriteria[] = {
    {1, "replication study, stochastic block preset N=2500", crit_medium_study},
    {2, "replication study, sparse preset N=15000", crit_large_study},
    {3, "forward addition matches exhaustive search", crit_oracle_equivalence},
    {4, "noiseless recovery at the smallest preset sizes", crit_noiseless_exact},
    {5, "marginal objective share shrinks with N", crit_objective_gap},
    {6, "inference calibration on a fixed design", crit_inference_calibration},
    {7, "beats the scalar autoregressive baseline", crit_against_sar},
    {8, "highest response impact at matched sizes", crit_impact_ranking},
    {9, "designed truths favour their own selection rule", crit_designed_truths},
    {10, "detection rises with the injected coefficient", crit_detection_sweep},
    {11, "centrality matches exhaustive enumeration", crit_centrality_oracle},
    {12, "heteroskedastic noise with profiled covariates", crit_hetero_covariates},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--list")) {
      for (const auto& c : kCriteria)
        std::printf("%2d  %s\n", c.id, c.name);
      return 0;
    }
    if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (!std::strcmp(argv[i], "--seed-offset") && i + 1 < argc) {
      g_offset = std::strtoull(argv[++i], nullptr, 10);
    } else if (!std::strcmp(argv[i], "--help")) {
      std::printf("usage: acceptance [--list] [--only K] [--seed-offset S]\n");
      return 0;
    }
  }

  int failures = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("%s  %2d  %-52s %s  [%.1fs]\n", o.pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    ++ran;
    failures += !o.pass;
  }
  if (ran == 0) {
    std::printf("no such criterion\n");
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
