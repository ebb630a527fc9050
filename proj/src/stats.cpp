#include "snirkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "snirkit/errors.hpp"

namespace snirkit {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_two_sided_p(double z) {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

namespace {

// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& v) {
  const size_t n = v.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw ConfigError("spearman: input lengths differ");
  if (x.size() < 2) throw ConfigError("spearman: need at least 2 points");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double mx = mean_of(rx), my = mean_of(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw ConfigError("spearman: an input is constant");
  return sxy / std::sqrt(sxx * syy);
}

double ks_uniform_stat(std::vector<double> sample) {
  if (sample.empty()) throw ConfigError("ks_uniform_stat: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (size_t i = 0; i < sample.size(); ++i) {
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max(d, std::max(std::fabs(sample[i] - lo),
                             std::fabs(sample[i] - hi)));
  }
  return d;
}

double chi2_quantile(double p, int df) {
  if (df < 1) throw ConfigError("chi2_quantile: df must be >= 1");
  if (p <= 0.0 || p >= 1.0)
    throw ConfigError("chi2_quantile: p must lie in (0,1)");
  // Standard normal quantile by bisection on the survival function; a few
  // dozen iterations are irrelevant at the call rates we have.
  double lo = -12.0, hi = 12.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (1.0 - normal_sf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  const double z = 0.5 * (lo + hi);
  const double d = static_cast<double>(df);
  const double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
  return d * t * t * t;
}

double chi2_stat(const std::vector<double>& observed,
                 const std::vector<double>& expected) {
  if (observed.size() != expected.size())
    throw ConfigError("chi2_stat: length mismatch");
  double s = 0.0;
  for (size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0)
      throw ConfigError("chi2_stat: expected count must be positive");
    const double d = observed[i] - expected[i];
    s += d * d / expected[i];
  }
  return s;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) throw ConfigError("mean_of: empty vector");
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) throw ConfigError("sd_of: need at least 2 values");
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace snirkit
