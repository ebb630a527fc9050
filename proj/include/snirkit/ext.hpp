#pragma once

// Extensions: covariate profiling (project nuisance regressors out of the
// response before fitting), the two-period variant of the model, and
// candidate-set aggregation across screening choices.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "snirkit/graph.hpp"
#include "snirkit/snir.hpp"

namespace snirkit {

// Y* = Y - Z (Z'Z)^-1 Z' Y. Z must have full column rank with fewer columns
// than rows; rank deficiency throws SingularDesignError.
Eigen::VectorXd profile_covariates(const Eigen::VectorXd& Y,
                                   const Eigen::MatrixXd& Z);

// Node partition into two posting periods with per-period candidate sets.
struct PeriodSplit {
  std::vector<int> j1, j2;  // disjoint; j1 union j2 = all nodes
  std::vector<int> m1, m2;  // candidates: m1 within j1, m2 within j2
};

// Validates the split against a graph (throws ConfigError when violated).
void validate_split(const DirectedGraph& g, const PeriodSplit& split);

// Screens each period separately: the floor(|j_p|^gamma) members of j_p
// with the largest (global) in-degree become that period's candidates.
PeriodSplit screen_periods(const DirectedGraph& g, std::vector<int> j1,
                           std::vector<int> j2, const ScreenConfig& cfg);

struct DynamicFit {
  FitResult period1, period2;
  bool period1_empty = false, period2_empty = false;
  std::vector<std::string> warnings;
};

// Two-period fit. Period 1 regresses rows j1 \ m1 on the m1 columns; period
// 2 regresses rows j2 \ m2 on the combined m1-union-m2 columns (influence
// can flow from either period's candidates into period 2). Each period is
// EBIC-selected and finished with conditional least squares on its own
// rows, j_p minus its selected set. An empty candidate pool or row set
// yields an empty period result with a warning instead of an error.
DynamicFit dynamic_fit(const DirectedGraph& g, const Eigen::VectorXd& Y,
                       const PeriodSplit& split, const FitConfig& cfg = {});

enum class AggregateRule { Majority, Union };

// Majority keeps nodes present in more than half of the sets; Union keeps
// every node that appears anywhere.
std::vector<int> aggregate_sets(const std::vector<std::vector<int>>& sets,
                                AggregateRule rule);

}  // namespace snirkit
