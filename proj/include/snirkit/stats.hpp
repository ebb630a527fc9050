#pragma once

// Small statistical helpers shared by the library and the test suites:
// normal tail probabilities, rank correlation, and goodness-of-fit statistics.

#include <cstddef>
#include <vector>

namespace snirkit {

// Standard normal survival function P(Z > z).
double normal_sf(double z);

// Two-sided p-value for a standard normal statistic.
double normal_two_sided_p(double z);

// Spearman rank correlation with average ranks for ties.
// Throws ConfigError if the vectors differ in length or have < 2 entries.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Kolmogorov-Smirnov statistic of a sample against Uniform(0,1).
double ks_uniform_stat(std::vector<double> sample);

// Approximate upper quantile of the chi-square distribution with `df`
// degrees of freedom (Wilson-Hilferty). Good to ~1% for df >= 3.
double chi2_quantile(double p, int df);

// Pearson chi-square statistic of observed counts against expected counts.
double chi2_stat(const std::vector<double>& observed,
                 const std::vector<double>& expected);

// Mean and (unbiased) standard deviation helpers.
double mean_of(const std::vector<double>& v);
double sd_of(const std::vector<double>& v);

}  // namespace snirkit
