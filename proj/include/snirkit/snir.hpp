#pragma once

// Network influence regression: in-degree screening, forward-addition
// selection over follower-indicator design columns, EBIC model choice, and
// conditional least-squares coefficients with asymptotic inference.
//
// Model: Y_i = mu_i + sum_j rho_j a_ij Y_j + eps_i, where a_ij = 1 when node
// i follows node j and rho is sparse. Screening keeps the floor(N^gamma)
// nodes of largest follower count as candidates M; the working regression
// explains the responses of non-candidate rows by the candidate columns
// x_j = A_(rows, j) * Y_j.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "snirkit/graph.hpp"

namespace snirkit {

struct ScreenConfig {
  double gamma = 2.0 / 3.0;  // candidate count = floor(N^gamma) when m == 0
  int m = 0;                 // explicit candidate count override
};

// Candidate nodes: the `m` (or floor(N^gamma)) nodes of largest in-degree,
// ties broken by ascending node index; returned ascending. The candidate
// count must stay below N so at least one regression row remains.
std::vector<int> screen_candidates(const DirectedGraph& g,
                                   const ScreenConfig& cfg);

// Immutable regression view: rows (non-candidate nodes) and one column per
// candidate. Column j equals Y_j on the rows that follow j and 0 elsewhere,
// so it is stored as the follower row positions plus the scalar Y_j.
struct DesignContext {
  std::vector<int> rows;        // global node ids, ascending
  std::vector<int> candidates;  // global node ids, ascending
  Eigen::VectorXd y;            // responses on `rows`
  std::vector<std::vector<int>> col_rows;  // positions into `rows` per column
  std::vector<double> col_scale;           // Y_j per column
  std::vector<double> col_norm2;           // squared column norm

  // Standard layout: candidates from screening, rows = complement.
  static DesignContext standard(const DirectedGraph& g,
                                const Eigen::VectorXd& Y,
                                const ScreenConfig& cfg);
  // Explicit layout (used by the two-period model). Both sets must be
  // disjoint, in range, and duplicate-free; they need not cover all nodes.
  static DesignContext build(const DirectedGraph& g, const Eigen::VectorXd& Y,
                             std::vector<int> candidates,
                             std::vector<int> rows);

  int num_rows() const { return static_cast<int>(rows.size()); }
  int num_candidates() const { return static_cast<int>(candidates.size()); }
  // Dense copy of column c (by candidate position), length num_rows().
  Eigen::VectorXd dense_column(int c) const;
};

// Residual sum of squares of y on the columns of `s` (global node ids, all
// candidates). Rank-deficient column sets throw SingularDesignError naming
// the offending node.
double rss(const DesignContext& ctx, const std::vector<int>& s);

// EBIC = log(rss) + s_size * (log(mc_size) + 2*log(m_size)) / mc_size.
// rss <= 0 throws DegenerateFitError (perfect fit must be reported by the
// caller, not fed back in).
double ebic(double rss_value, int s_size, int m_size, int mc_size);

struct SelectionPath {
  std::vector<int> picks;    // chosen candidate nodes, in selection order
  std::vector<double> rss;   // RSS after each step
  std::vector<double> ebic;  // EBIC after each step
  int k_star = 0;            // filled by select_model / fit
  bool truncated = false;    // stopped early (rank exhaustion / perfect fit)
  std::vector<std::string> warnings;
};

struct ForwardOptions {
  bool parallel = true;  // per-step candidate scan with OpenMP
};

// Greedy forward addition: step k adds the candidate giving the largest RSS
// reduction, ties (within 1e-9 relative) to the smallest node index.
// Candidates whose exact orthogonalized column norm falls below 1e-10 of
// their original norm are skipped (they carry no new direction); if every
// remaining candidate is skipped, the path is truncated with a warning. A
// numerically perfect fit also truncates the path. The candidate scan evaluates each candidate
// independently and reduces by ascending index, so results do not depend on
// the thread count.
SelectionPath forward_addition(const DesignContext& ctx, int K,
                               const ForwardOptions& opts = {});

// Reference implementation without the OpenMP scan; bit-identical output.
SelectionPath forward_addition_serial(const DesignContext& ctx, int K);

// Earliest step attaining the minimum EBIC (1-based).
int select_model(const SelectionPath& path);

struct CmleResult {
  std::vector<int> s;  // ascending node ids
  Eigen::VectorXd rho, se, t, p;
  double sigma2 = 0.0;
  int rows_used = 0;
};

// Conditional least squares of Y over rows s^c (complement of s within all
// nodes, or an explicit row set) on columns A_(rows, j) * Y_j for j in s.
// sigma2 uses the degrees-of-freedom correction (rows - |s|); standard
// errors come from sigma2 * (X'X)^-1; p-values are two-sided normal.
CmleResult cmle(const DirectedGraph& g, const Eigen::VectorXd& Y,
                const std::vector<int>& s);
CmleResult cmle_on_rows(const DirectedGraph& g, const Eigen::VectorXd& Y,
                        const std::vector<int>& s, std::vector<int> rows);

// R-squared of the conditional regression: 1 - RSS(s)/TSS with TSS centered
// over the rows; adjusted version uses |rows| and |s|. Constant responses on
// the rows throw DegenerateFitError.
std::pair<double, double> r_squared(const DesignContext& ctx,
                                    const std::vector<int>& s);

struct FitConfig {
  ScreenConfig screen;
  int K = 0;  // forward-addition budget; effective K = max(floor(N^(5/9)), K)
  ForwardOptions forward;
};

struct FitResult {
  std::vector<int> selected;  // ascending node ids
  Eigen::VectorXd rho_hat, se, t_value, p_value;
  double sigma2_hat = 0.0;
  double r2 = 0.0, adj_r2 = 0.0;
  SelectionPath path;
  int k_star = 0;
  int m_size = 0, mc_size = 0;
  std::vector<std::string> warnings;
};

// Full pipeline: screen, forward addition with K = max(floor(N^(5/9)),
// cfg.K) capped by |M| and |M^c|-1, EBIC selection, final conditional
// least squares on the selected set, and R-squared on the working rows.
FitResult fit(const DirectedGraph& g, const Eigen::VectorXd& Y,
              const FitConfig& cfg = {});

// Shared selection engine behind fit() and the two-period variant: forward
// addition on a prebuilt design (budget K = max(floor(scale_n^(5/9)),
// cfg.K) capped by the design), EBIC selection, then conditional least
// squares on `row_base` minus the selected set. `row_base` is the node set
// whose rows legitimately carry the conditional regression (all nodes for
// the static fit, the period's nodes for a period fit).
FitResult fit_on_design(const DirectedGraph& g, const Eigen::VectorXd& Y,
                        const DesignContext& ctx, int scale_n,
                        const std::vector<int>& row_base,
                        const FitConfig& cfg);

struct FullObjective {
  double q = 0.0;        // conditional objective
  double q_tilde = 0.0;  // plus the marginal block terms
};

// Q = ||Y_(s^c) - A_(s^c,s) diag(rho) Y_s||^2; Q_tilde adds
// ||H1 Y_s - mu||^2 + 2*sigma2*log|H1| with H1 = I - A_(s,s) diag(rho).
// Singular H1 throws SingularDesignError.
FullObjective full_objective(const DirectedGraph& g, const Eigen::VectorXd& Y,
                             const std::vector<int>& s, double mu,
                             const Eigen::VectorXd& rho_s, double sigma2);

struct ConditionReport {
  double g1_min = 0.0, g1_max = 0.0;  // eigenvalue range of n^-1 X'X
  double g2_min = 0.0, g2_max = 0.0;  // range of B^-1/2 C'C B^-1/2
  int reps = 0;
};

// Empirical eigenvalue diagnostic over random node subsamples: for each
// repetition, draws `subsample_n` nodes, screens the induced subgraph,
// picks a random candidate subset S of size `set_size`, and records the
// eigenvalue ranges of (1/n) A_(S^c,S)' A_(S^c,S) and of
// B^-1/2 A_(M^c,S)' A_(M^c,S) B^-1/2 with B = diag(in-degrees of S).
ConditionReport condition_check(const DirectedGraph& g, int set_size,
                                int subsample_n, int reps,
                                std::uint64_t seed);

}  // namespace snirkit
