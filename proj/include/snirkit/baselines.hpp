#pragma once

// Competing influence-selection rules, the scalar spatial autoregression
// baseline, and the response-loss / follower-loss impact comparison.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "snirkit/graph.hpp"
#include "snirkit/snir.hpp"

namespace snirkit {

enum class RuleKind { SNIR, InDegree, Response, Betweenness, Harmonic };

struct SelectionRule {
  RuleKind kind = RuleKind::InDegree;
  int size = 1;
};

// Top-`size` nodes by the rule's score, descending, ties by ascending index.
// The SNIR rule delegates to fit() and returns the first `size` picks of the
// forward-addition path (its EBIC-selected set when size == 0 is not used
// here; compare_methods handles that pairing).
std::vector<int> select_by_rule(const DirectedGraph& g,
                                const Eigen::VectorXd& Y,
                                const SelectionRule& rule,
                                const FitConfig& fit_cfg = {});

struct SarFit {
  double rho = 0.0;
  double sigma2 = 0.0;
  double loglik = 0.0;
  double r2 = 0.0, adj_r2 = 0.0;
  bool boundary = false;  // optimum pinned at the search-interval edge
  std::vector<std::string> warnings;
};

struct SarOptions {
  double rho_min = -0.999, rho_max = 0.999;
  double tol = 1e-6;       // golden-section interval tolerance
  int grid_points = 41;    // coarse pre-scan guarding non-unimodality
  // Log-determinant engine: dense LU is exact and used when N <= lu_cutoff;
  // larger graphs use a seeded Hutchinson trace expansion of
  // log|I - rho W| whose per-rho cost is O(terms) after one set of probe
  // sweeps per graph.
  int lu_cutoff = 800;
  int probes = 16;
  int terms = 80;
};

// Gaussian quasi-likelihood fit of Y = rho W Y + eps with W the row-
// normalized adjacency (zero out-degree rows stay zero). Maximizes
// l(rho) = -(N/2) log(sigma2(rho)) + log|I - rho W| over (rho_min, rho_max).
SarFit sar_fit(const DirectedGraph& g, const Eigen::VectorXd& Y,
               const SarOptions& opts = {});

// Fraction of total response removed when s leaves the network: own
// responses plus the fitted influence of s on everyone else, over sum(Y).
// Clipped to [0,1]; `clipped` (optional) reports whether clipping occurred.
double response_loss(const DirectedGraph& g, const Eigen::VectorXd& Y,
                     const std::vector<int>& s, const Eigen::VectorXd& rho_s,
                     bool* clipped = nullptr);

struct MethodImpact {
  std::vector<int> selected;
  double delta_r = 0.0;  // response loss
  double delta_f = 0.0;  // follower loss
  bool delta_r_clipped = false;
};

struct ImpactReport {
  // Keyed "snir", "in_degree", "response", "betweenness", "harmonic".
  std::map<std::string, MethodImpact> methods;
  int size = 0;  // matched selection size
};

// Runs the SNIR fit, then every baseline rule at the matched size
// |S^(k*)| (or `size_override` if positive), scoring each selected set by
// response loss (using its own conditional least-squares coefficients) and
// follower loss.
ImpactReport compare_methods(const DirectedGraph& g, const Eigen::VectorXd& Y,
                             const FitConfig& fit_cfg = {},
                             int size_override = 0);

}  // namespace snirkit
