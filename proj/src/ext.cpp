#include "snirkit/ext.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "snirkit/errors.hpp"

namespace snirkit {

Eigen::VectorXd profile_covariates(const Eigen::VectorXd& Y,
                                   const Eigen::MatrixXd& Z) {
  const int n = static_cast<int>(Y.size());
  if (Z.rows() != n)
    throw ConfigError("profile_covariates: Z rows != response length");
  if (Z.cols() < 1) throw ConfigError("profile_covariates: Z has no columns");
  if (Z.cols() >= n)
    throw ConfigError("profile_covariates: need fewer columns than rows");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Z);
  if (qr.rank() < Z.cols())
    throw SingularDesignError(
        "profile_covariates: covariate columns are linearly dependent");
  return Y - Z * qr.solve(Y);
}

namespace {

std::vector<int> sorted_checked(std::vector<int> v, int n, const char* what) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw ConfigError(std::string(what) + ": duplicate node");
  if (!v.empty() && (v.front() < 0 || v.back() >= n))
    throw ConfigError(std::string(what) + ": node out of range");
  return v;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

void validate_split(const DirectedGraph& g, const PeriodSplit& split) {
  const int n = g.num_nodes();
  auto j1 = sorted_checked(split.j1, n, "split.j1");
  auto j2 = sorted_checked(split.j2, n, "split.j2");
  auto m1 = sorted_checked(split.m1, n, "split.m1");
  auto m2 = sorted_checked(split.m2, n, "split.m2");
  std::vector<int> inter;
  std::set_intersection(j1.begin(), j1.end(), j2.begin(), j2.end(),
                        std::back_inserter(inter));
  if (!inter.empty()) throw ConfigError("split: periods overlap");
  if (static_cast<int>(j1.size() + j2.size()) != n)
    throw ConfigError("split: periods must cover all nodes");
  if (!is_subset(m1, j1)) throw ConfigError("split: m1 not within j1");
  if (!is_subset(m2, j2)) throw ConfigError("split: m2 not within j2");
}

PeriodSplit screen_periods(const DirectedGraph& g, std::vector<int> j1,
                           std::vector<int> j2, const ScreenConfig& cfg) {
  const int n = g.num_nodes();
  PeriodSplit s;
  s.j1 = sorted_checked(std::move(j1), n, "j1");
  s.j2 = sorted_checked(std::move(j2), n, "j2");
  const double gamma = cfg.gamma;
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw ConfigError("screen_periods: gamma must lie in (0,1]");
  auto screen_within = [&](const std::vector<int>& members) {
    std::vector<int> out;
    if (members.size() < 2) return out;
    int m = cfg.m;
    if (m == 0)
      m = static_cast<int>(std::floor(
          std::pow(static_cast<double>(members.size()), gamma) + 1e-9));
    m = std::min<int>(m, static_cast<int>(members.size()) - 1);
    if (m < 1) return out;
    out = members;
    std::stable_sort(out.begin(), out.end(), [&](int a, int b) {
      const int da = g.in_degree(a), db = g.in_degree(b);
      if (da != db) return da > db;
      return a < b;
    });
    out.resize(m);
    std::sort(out.begin(), out.end());
    return out;
  };
  s.m1 = screen_within(s.j1);
  s.m2 = screen_within(s.j2);
  validate_split(g, s);
  return s;
}

DynamicFit dynamic_fit(const DirectedGraph& g, const Eigen::VectorXd& Y,
                       const PeriodSplit& split, const FitConfig& cfg) {
  validate_split(g, split);
  if (Y.size() != g.num_nodes())
    throw ConfigError("dynamic_fit: response length != node count");
  if (!Y.allFinite()) throw ConfigError("dynamic_fit: non-finite response");

  auto sorted = [](std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const std::vector<int> j1 = sorted(split.j1);
  const std::vector<int> j2 = sorted(split.j2);
  const std::vector<int> m1 = sorted(split.m1);
  const std::vector<int> m2 = sorted(split.m2);

  DynamicFit out;
  auto run_period = [&](const std::vector<int>& jp,
                        const std::vector<int>& mp,
                        const std::vector<int>& cands, FitResult& fr,
                        bool& empty, const char* label) {
    if (cands.empty()) {
      empty = true;
      out.warnings.push_back(std::string(label) +
                             ": no candidates; period left unfitted");
      return;
    }
    std::vector<int> rows;
    std::set_difference(jp.begin(), jp.end(), mp.begin(), mp.end(),
                        std::back_inserter(rows));
    if (rows.size() < 2) {
      empty = true;
      out.warnings.push_back(std::string(label) +
                             ": too few regression rows; period left unfitted");
      return;
    }
    DesignContext ctx = DesignContext::build(g, Y, cands, rows);
    fr = fit_on_design(g, Y, ctx, static_cast<int>(jp.size()), jp, cfg);
  };

  run_period(j1, m1, m1, out.period1, out.period1_empty, "period1");
  std::vector<int> pool;
  std::set_union(m1.begin(), m1.end(), m2.begin(), m2.end(),
                 std::back_inserter(pool));
  run_period(j2, m2, pool, out.period2, out.period2_empty, "period2");
  return out;
}

std::vector<int> aggregate_sets(const std::vector<std::vector<int>>& sets,
                                AggregateRule rule) {
  if (sets.empty()) throw ConfigError("aggregate_sets: no sets given");
  std::map<int, int> count;
  for (const auto& s : sets) {
    std::vector<int> u = s;
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    for (int v : u) ++count[v];
  }
  std::vector<int> out;
  const int needed = rule == AggregateRule::Majority
                         ? static_cast<int>(sets.size()) / 2 + 1
                         : 1;
  for (const auto& [node, c] : count)
    if (c >= needed) out.push_back(node);
  return out;
}

}  // namespace snirkit
