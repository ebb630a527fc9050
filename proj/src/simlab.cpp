#include "snirkit/simlab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "snirkit/errors.hpp"

namespace snirkit {

namespace {

void validate_truth(const DirectedGraph& g, const TruthSpec& t) {
  const int n = g.num_nodes();
  if (t.s1.empty()) throw ConfigError("truth: empty influential set");
  if (t.rho.size() != t.s1.size())
    throw ConfigError("truth: rho length != |s1|");
  if (!t.fixed_y_s1.empty() && t.fixed_y_s1.size() != t.s1.size())
    throw ConfigError("truth: fixed responses length != |s1|");
  for (size_t a = 0; a < t.s1.size(); ++a) {
    if (t.s1[a] < 0 || t.s1[a] >= n)
      throw ConfigError("truth: node out of range");
    if (a > 0 && t.s1[a] <= t.s1[a - 1])
      throw ConfigError("truth: s1 must be strictly ascending");
    if (!(std::fabs(t.rho[a]) < 1.0))
      throw ConfigError("truth: |rho| must be < 1");
  }
  if (t.noise.sigma < 0.0) throw ConfigError("truth: negative noise sd");
}

Eigen::VectorXd generate_impl(const DirectedGraph& g, const TruthSpec& truth,
                              const Eigen::MatrixXd* Z,
                              const Eigen::VectorXd* beta, Rng& rng) {
  validate_truth(g, truth);
  const int n = g.num_nodes();
  const int p = static_cast<int>(truth.s1.size());
  std::vector<int> pos_in_s(n, -1);
  for (int a = 0; a < p; ++a) pos_in_s[truth.s1[a]] = a;

  Eigen::VectorXd zb = Eigen::VectorXd::Zero(n);
  if (Z) {
    if (Z->rows() != n) throw ConfigError("covariates: row count != nodes");
    if (beta->size() != Z->cols())
      throw ConfigError("covariates: beta length != columns");
    zb = (*Z) * (*beta);
  }

  // Fixed draw order: per-node sds first, then eps on S1, then eps on S0.
  Eigen::VectorXd sd = Eigen::VectorXd::Constant(n, truth.noise.sigma);
  if (truth.noise.heteroskedastic) {
    for (int v = 0; v < n; ++v)
      sd[v] = rng.uniform(truth.noise.het_lo, truth.noise.het_hi);
  }

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  if (!truth.fixed_y_s1.empty()) {
    for (int a = 0; a < p; ++a) y[truth.s1[a]] = truth.fixed_y_s1[a];
  } else {
    // Influential block: solve (I - A_(S1,S1) diag(rho)) x = mu + Z b + eps.
    Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(p, p);
    for (int a = 0; a < p; ++a)
      for (int c = 0; c < p; ++c)
        if (a != c && g.has_edge(truth.s1[a], truth.s1[c]))
          ad(a, c) = truth.rho[c];
    const Eigen::VectorXcd ev = ad.eigenvalues();
    double radius = 0.0;
    for (int a = 0; a < p; ++a) radius = std::max(radius, std::abs(ev[a]));
    if (radius >= 1.0 - 1e-9)
      throw UnstableTruthError(
          "influential block spectral radius " + std::to_string(radius) +
          " >= 1; resample the truth");
    Eigen::VectorXd rhs(p);
    for (int a = 0; a < p; ++a)
      rhs[a] = truth.mu + zb[truth.s1[a]] + sd[truth.s1[a]] * rng.normal();
    const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(p, p) - ad;
    const Eigen::VectorXd ys = h.partialPivLu().solve(rhs);
    for (int a = 0; a < p; ++a) y[truth.s1[a]] = ys[a];
  }

  // Non-influential rows: followed influence plus noise (mu is zero there).
  Eigen::VectorXd pred = Eigen::VectorXd::Zero(n);
  for (int a = 0; a < p; ++a) {
    const int j = truth.s1[a];
    const double w = truth.rho[a] * y[j];
    for (const int* q = g.in_begin(j); q != g.in_end(j); ++q)
      if (pos_in_s[*q] < 0) pred[*q] += w;
  }
  for (int v = 0; v < n; ++v) {
    if (pos_in_s[v] >= 0) continue;
    y[v] = pred[v] + zb[v] + sd[v] * rng.normal();
  }
  return y;
}

}  // namespace

Eigen::VectorXd gen_snir_data(const DirectedGraph& g, const TruthSpec& truth,
                              Rng& rng) {
  return generate_impl(g, truth, nullptr, nullptr, rng);
}

Eigen::VectorXd gen_snir_data(const DirectedGraph& g, const TruthSpec& truth,
                              std::uint64_t seed) {
  Rng rng(seed);
  return generate_impl(g, truth, nullptr, nullptr, rng);
}

Eigen::VectorXd gen_snir_data_cov(const DirectedGraph& g,
                                  const TruthSpec& truth,
                                  const Eigen::MatrixXd& Z,
                                  const Eigen::VectorXd& beta, Rng& rng) {
  return generate_impl(g, truth, &Z, &beta, rng);
}

Eigen::MatrixXd gen_ar_covariates(int n, int p, double rho_z, Rng& rng) {
  if (n < 1 || p < 1) throw ConfigError("gen_ar_covariates: bad dimensions");
  if (!(std::fabs(rho_z) < 1.0))
    throw ConfigError("gen_ar_covariates: |rho_z| must be < 1");
  // AR(1) covariance has an exact causal factorization: z_1 = e_1,
  // z_j = rho_z * z_{j-1} + sqrt(1 - rho_z^2) * e_j.
  const double c = std::sqrt(1.0 - rho_z * rho_z);
  Eigen::MatrixXd z(n, p);
  for (int i = 0; i < n; ++i) {
    z(i, 0) = rng.normal();
    for (int j = 1; j < p; ++j) z(i, j) = rho_z * z(i, j - 1) + c * rng.normal();
  }
  return z;
}

TruthSpec pick_truth(const DirectedGraph& g, TruthMode mode, int size,
                     Rng& rng, const Eigen::VectorXd* y_real,
                     const ScreenConfig& screen) {
  if (size < 1) throw ConfigError("pick_truth: size must be >= 1");
  TruthSpec t;
  switch (mode) {
    case TruthMode::RandomFromM: {
      std::vector<int> m = screen_candidates(g, screen);
      if (size > static_cast<int>(m.size()))
        throw ConfigError("pick_truth: size exceeds candidate count");
      for (int a = 0; a < size; ++a) {
        const int pick = a + static_cast<int>(rng.uniform_int(
                                 static_cast<uint64_t>(m.size() - a)));
        std::swap(m[a], m[pick]);
      }
      t.s1.assign(m.begin(), m.begin() + size);
      break;
    }
    case TruthMode::TopInDegree: {
      ScreenConfig sc;
      sc.m = size;
      t.s1 = screen_candidates(g, sc);
      break;
    }
    case TruthMode::TopResponse: {
      if (!y_real)
        throw ConfigError("pick_truth: TopResponse requires base responses");
      if (y_real->size() != g.num_nodes())
        throw ConfigError("pick_truth: response length != node count");
      std::vector<int> idx(g.num_nodes());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if ((*y_real)[a] != (*y_real)[b]) return (*y_real)[a] > (*y_real)[b];
        return a < b;
      });
      t.s1.assign(idx.begin(), idx.begin() + size);
      break;
    }
  }
  std::sort(t.s1.begin(), t.s1.end());
  t.rho.resize(size);
  if (mode == TruthMode::TopResponse) {
    // Sign-mixed recipe: two members positive U(0.25,0.5), rest U(-1,-0.5).
    std::vector<int> order(size);
    std::iota(order.begin(), order.end(), 0);
    for (int a = 0; a < std::min(2, size); ++a) {
      const int pick = a + static_cast<int>(rng.uniform_int(
                               static_cast<uint64_t>(size - a)));
      std::swap(order[a], order[pick]);
    }
    std::vector<char> positive(size, 0);
    for (int a = 0; a < std::min(2, size); ++a) positive[order[a]] = 1;
    for (int a = 0; a < size; ++a)
      t.rho[a] = positive[a] ? rng.uniform(0.25, 0.5) : rng.uniform(-1.0, -0.5);
  } else {
    for (int a = 0; a < size; ++a) t.rho[a] = rng.uniform(0.5, 1.0);
  }
  return t;
}

StudyMetrics metrics(const std::vector<int>& s1_true,
                     const std::vector<int>& s_hat,
                     const Eigen::VectorXd& rho_true,
                     const Eigen::VectorXd& rho_hat, int m_size, int n) {
  if (rho_true.size() != static_cast<int>(s1_true.size()) ||
      rho_hat.size() != static_cast<int>(s_hat.size()))
    throw ConfigError("metrics: coefficient/set length mismatch");
  std::vector<int> st = s1_true, sh = s_hat;
  std::sort(st.begin(), st.end());
  std::sort(sh.begin(), sh.end());
  StudyMetrics out;
  std::vector<int> inter;
  std::set_intersection(st.begin(), st.end(), sh.begin(), sh.end(),
                        std::back_inserter(inter));
  out.tpr = st.empty() ? 0.0
                       : static_cast<double>(inter.size()) /
                             static_cast<double>(st.size());
  const int fp_pool = m_size - static_cast<int>(st.size());
  const int fp = static_cast<int>(sh.size() - inter.size());
  out.fpr = fp_pool > 0 ? static_cast<double>(fp) /
                              static_cast<double>(fp_pool)
                        : 0.0;
  out.cfp = (st == sh) ? 1.0 : 0.0;
  Eigen::VectorXd full_true = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd full_hat = Eigen::VectorXd::Zero(n);
  for (size_t a = 0; a < s1_true.size(); ++a)
    full_true[s1_true[a]] = rho_true[static_cast<int>(a)];
  for (size_t a = 0; a < s_hat.size(); ++a)
    full_hat[s_hat[a]] = rho_hat[static_cast<int>(a)];
  out.err = (full_true - full_hat).norm();
  return out;
}

StudyResult run_study(const StudyConfig& cfg) {
  if (cfg.reps < 1) throw ConfigError("run_study: reps must be >= 1");
  if (cfg.s1_size < 1) throw ConfigError("run_study: s1_size must be >= 1");
  StudyResult out;
  out.n = cfg.gen.n;
  out.reps = cfg.reps;
  double fit_seconds = 0.0;
  StudyMetrics acc;
  for (int r = 0; r < cfg.reps; ++r) {
    Rng rng = Rng::for_replication(cfg.seed, static_cast<uint64_t>(r));
    GeneratorSpec gs = cfg.gen;
    gs.seed = rng.next_u64();
    const DirectedGraph g = generate(gs);

    Eigen::MatrixXd Z;
    Eigen::VectorXd beta;
    if (cfg.cov_p > 0) {
      Z = gen_ar_covariates(g.num_nodes(), cfg.cov_p, cfg.cov_ar, rng);
      beta = Eigen::VectorXd::Ones(cfg.cov_p);
    }

    TruthSpec truth;
    Eigen::VectorXd y;
    int attempt = 0;
    for (;;) {
      std::vector<int> m = screen_candidates(g, cfg.fit.screen);
      if (cfg.s1_size > static_cast<int>(m.size()))
        throw ConfigError("run_study: s1_size exceeds candidate count");
      truth = TruthSpec{};
      truth.mu = cfg.mu;
      truth.noise = cfg.noise;
      for (int a = 0; a < cfg.s1_size; ++a) {
        const int pick = a + static_cast<int>(rng.uniform_int(
                                 static_cast<uint64_t>(m.size() - a)));
        std::swap(m[a], m[pick]);
      }
      truth.s1.assign(m.begin(), m.begin() + cfg.s1_size);
      std::sort(truth.s1.begin(), truth.s1.end());
      truth.rho.resize(cfg.s1_size);
      for (int a = 0; a < cfg.s1_size; ++a)
        truth.rho[a] = rng.uniform(cfg.rho_lo, cfg.rho_hi);
      try {
        y = cfg.cov_p > 0 ? gen_snir_data_cov(g, truth, Z, beta, rng)
                          : gen_snir_data(g, truth, rng);
        break;
      } catch (const UnstableTruthError&) {
        ++out.redraws;
        if (++attempt > cfg.max_redraws)
          throw UnstableTruthError(
              "run_study: replication " + std::to_string(r) +
              " exhausted " + std::to_string(cfg.max_redraws) +
              " truth redraws");
      }
    }

    Eigen::VectorXd y_fit = y;
    if (cfg.cov_p > 0) {
      // Profile the covariates back out before fitting.
      const Eigen::MatrixXd zt_z = Z.transpose() * Z;
      y_fit = y - Z * zt_z.ldlt().solve(Z.transpose() * y);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const FitResult fr = fit(g, y_fit, cfg.fit);
    const auto t1 = std::chrono::steady_clock::now();
    fit_seconds += std::chrono::duration<double>(t1 - t0).count();

    Eigen::VectorXd rho_true(cfg.s1_size);
    for (int a = 0; a < cfg.s1_size; ++a) rho_true[a] = truth.rho[a];
    const StudyMetrics one = metrics(truth.s1, fr.selected, rho_true,
                                     fr.rho_hat, fr.m_size, g.num_nodes());
    acc.tpr += one.tpr;
    acc.fpr += one.fpr;
    acc.cfp += one.cfp;
    acc.err += one.err;
  }
  const double d = static_cast<double>(cfg.reps);
  out.mean.tpr = acc.tpr / d;
  out.mean.fpr = acc.fpr / d;
  out.mean.cfp = acc.cfp / d;
  out.mean.err = acc.err / d;
  out.secs_per_fit = fit_seconds / d;
  return out;
}

std::vector<double> default_sweep_grid() {
  std::vector<double> g(12);
  for (int k = 1; k <= 12; ++k) g[k - 1] = 0.025 * k;
  return g;
}

std::vector<SweepPoint> snr_sweep(const DirectedGraph& g,
                                  const Eigen::VectorXd& y_base,
                                  const std::vector<int>& s_base,
                                  const Eigen::VectorXd& rho_base,
                                  const std::vector<double>& grid, int reps,
                                  double sigma, std::uint64_t seed,
                                  const FitConfig& fit_cfg) {
  if (grid.empty()) throw ConfigError("snr_sweep: empty grid");
  if (reps < 1) throw ConfigError("snr_sweep: reps must be >= 1");
  if (rho_base.size() != static_cast<int>(s_base.size()))
    throw ConfigError("snr_sweep: base coefficients length mismatch");
  const std::vector<int> m = screen_candidates(g, fit_cfg.screen);
  // Sort the base set while keeping its coefficients aligned.
  std::vector<std::pair<int, double>> base(s_base.size());
  for (size_t a = 0; a < s_base.size(); ++a)
    base[a] = {s_base[a], rho_base[static_cast<int>(a)]};
  std::sort(base.begin(), base.end());
  std::vector<int> sb(base.size());
  std::vector<double> rb(base.size());
  for (size_t a = 0; a < base.size(); ++a) {
    sb[a] = base[a].first;
    // Fitted base coefficients can stray just past 1; keep the conditional
    // truth inside the model's coefficient range.
    rb[a] = std::clamp(base[a].second, -0.999, 0.999);
  }
  std::vector<int> pool;
  std::set_difference(m.begin(), m.end(), sb.begin(), sb.end(),
                      std::back_inserter(pool));
  if (pool.empty())
    throw ConfigError("snr_sweep: no candidate left to inject");

  std::vector<SweepPoint> out;
  out.reserve(grid.size());
  for (size_t gi = 0; gi < grid.size(); ++gi) {
    const double coef = grid[gi];
    int hits = 0;
    for (int r = 0; r < reps; ++r) {
      Rng rng = Rng::for_replication(
          seed, static_cast<uint64_t>(gi) * 1000003ULL +
                    static_cast<uint64_t>(r));
      const int u = pool[rng.uniform_int(pool.size())];
      // The new node becomes influential, so its response obeys the
      // influential-row equation given the held base responses:
      // y_u = mu + sum_j rho_j a_uj y_j + eps_u. Holding it at its base
      // (non-influential) value instead would leave the injected column
      // without signal whenever u follows no base influencer.
      TruthSpec truth;
      truth.noise.sigma = sigma;
      double y_u = truth.mu;
      for (const int* q = g.out_begin(u); q != g.out_end(u); ++q) {
        const auto it = std::lower_bound(sb.begin(), sb.end(), *q);
        if (it != sb.end() && *it == *q)
          y_u += rb[static_cast<size_t>(it - sb.begin())] * y_base[*q];
      }
      y_u += rng.normal(0.0, sigma);
      truth.s1 = sb;
      truth.s1.push_back(u);
      std::sort(truth.s1.begin(), truth.s1.end());
      truth.rho.resize(truth.s1.size());
      truth.fixed_y_s1.resize(truth.s1.size());
      for (size_t a = 0; a < truth.s1.size(); ++a) {
        const int node = truth.s1[a];
        if (node == u) {
          truth.rho[a] = coef;
          truth.fixed_y_s1[a] = y_u;
        } else {
          const auto it = std::lower_bound(sb.begin(), sb.end(), node);
          truth.rho[a] = rb[static_cast<size_t>(it - sb.begin())];
          truth.fixed_y_s1[a] = y_base[node];
        }
      }
      const Eigen::VectorXd y = gen_snir_data(g, truth, rng);
      const FitResult fr = fit(g, y, fit_cfg);
      if (std::binary_search(fr.selected.begin(), fr.selected.end(), u))
        ++hits;
    }
    out.push_back({coef, static_cast<double>(hits) / reps});
  }
  return out;
}

GeneratorSpec make_preset(const std::string& kind, int n) {
  if (n < 2) throw ConfigError("make_preset: n must be >= 2");
  GeneratorSpec s;
  s.n = n;
  if (kind == "er") {
    s.kind = GeneratorSpec::Kind::ER;
    s.p = std::min(0.5, 3.0 * std::pow(static_cast<double>(n), -0.48));
  } else if (kind == "sbm") {
    s.kind = GeneratorSpec::Kind::SBM;
    s.k_blocks = 5;
    s.p_in = std::min(0.5, 34.85 * std::pow(static_cast<double>(n), -0.8));
    s.p_out = 0.5 * s.p_in;
  } else if (kind == "powerlaw") {
    s.kind = GeneratorSpec::Kind::PowerLaw;
    s.alpha = 2.5;
  } else {
    throw ConfigError("make_preset: unknown preset '" + kind + "'");
  }
  return s;
}

}  // namespace snirkit
