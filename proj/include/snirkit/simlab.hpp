#pragma once

// Synthetic-data generation from the influence model and the replication
// harness: truth sampling, response generation (optionally conditional on
// fixed influential responses, heteroskedastic, or with covariates),
// per-replication metrics, aggregated studies, and the detection-rate sweep.

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "snirkit/generators.hpp"
#include "snirkit/graph.hpp"
#include "snirkit/rng.hpp"
#include "snirkit/snir.hpp"

namespace snirkit {

struct NoiseSpec {
  double sigma = 1.0;
  bool heteroskedastic = false;  // per-node sd drawn U(het_lo, het_hi)
  double het_lo = 0.5, het_hi = 1.5;
};

struct TruthSpec {
  std::vector<int> s1;      // influential nodes, ascending
  std::vector<double> rho;  // aligned with s1; each |rho_j| < 1
  double mu = 5.0;          // intercept on influential rows
  NoiseSpec noise;
  // When non-empty (aligned with s1), the influential responses are held at
  // these values and only the non-influential rows are generated — the
  // conditional form of the model.
  std::vector<double> fixed_y_s1;
};

// Draws the response vector: the influential block solves
// (I - A_(S1,S1) diag(rho)) Y_S1 = mu + eps_S1, then every other row gets
// its followed influence plus noise. A spectral radius >= 1 on the block
// throws UnstableTruthError (callers typically resample). In conditional
// mode (fixed_y_s1 set) no block solve happens and no radius check applies.
// Draw order is fixed: heteroskedastic sds (all nodes, ascending), then
// eps on S1 (ascending), then eps on the complement (ascending).
Eigen::VectorXd gen_snir_data(const DirectedGraph& g, const TruthSpec& truth,
                              Rng& rng);
Eigen::VectorXd gen_snir_data(const DirectedGraph& g, const TruthSpec& truth,
                              std::uint64_t seed);

// Covariate variant: adds Z*beta to every row (inside the block solve for
// influential rows).
Eigen::VectorXd gen_snir_data_cov(const DirectedGraph& g,
                                  const TruthSpec& truth,
                                  const Eigen::MatrixXd& Z,
                                  const Eigen::VectorXd& beta, Rng& rng);

// Covariate matrix with AR(rho_z) cross-column covariance: row i is
// N(0, Sigma) with Sigma_jk = rho_z^|j-k|.
Eigen::MatrixXd gen_ar_covariates(int n, int p, double rho_z, Rng& rng);

enum class TruthMode { RandomFromM, TopResponse, TopInDegree };

// Truth sampling for the designed experiments. RandomFromM draws s1
// uniformly from the screened candidates with coefficients U(0.5, 1);
// TopInDegree takes the largest-in-degree nodes, coefficients U(0.5, 1);
// TopResponse (requires y_real) takes the largest responses and uses the
// sign-mixed recipe: two members get U(0.25, 0.5), the rest U(-1, -0.5).
TruthSpec pick_truth(const DirectedGraph& g, TruthMode mode, int size,
                     Rng& rng, const Eigen::VectorXd* y_real = nullptr,
                     const ScreenConfig& screen = {});

struct StudyMetrics {
  double tpr = 0.0, fpr = 0.0, cfp = 0.0, err = 0.0;
};

// One-replication selection metrics. rho_true/rho_hat are embedded into
// length-n vectors (zeros off-support) before the L2 error. FPR divides by
// |M| - |S1| (0 when that is empty).
StudyMetrics metrics(const std::vector<int>& s1_true,
                     const std::vector<int>& s_hat,
                     const Eigen::VectorXd& rho_true,
                     const Eigen::VectorXd& rho_hat, int m_size, int n);

struct StudyConfig {
  GeneratorSpec gen;          // gen.seed is ignored; per-rep seeds are used
  int s1_size = 10;
  double rho_lo = 0.5, rho_hi = 1.0;
  double mu = 5.0;
  NoiseSpec noise;
  int reps = 100;
  std::uint64_t seed = 0;
  FitConfig fit;
  int cov_p = 0;              // covariate count (0 = none); profiled out
  double cov_ar = 0.5;        // AR parameter of the covariate covariance
  int max_redraws = 5;        // retries per replication on unstable truths
};

struct StudyResult {
  int n = 0;
  StudyMetrics mean;          // averaged over replications
  double secs_per_fit = 0.0;  // wall time of fit() only
  int redraws = 0;            // unstable-truth resamples across the study
  int reps = 0;
};

// Full replication study: per replication, regenerate the graph, draw S1
// uniformly from the screened candidates with U(rho_lo, rho_hi)
// coefficients, generate responses, fit, and score. Replication r uses the
// stream Rng::for_replication(seed, r); results are deterministic.
StudyResult run_study(const StudyConfig& cfg);

struct SweepPoint {
  double coef = 0.0;
  double detection = 0.0;
};

// Detection-rate sweep: the base influential set and responses stay fixed;
// for each grid coefficient, each replication adds one uniformly drawn
// extra influential node u from M minus the base set with that coefficient.
// u's response is drawn from the influential-row equation (intercept 5 plus
// its followed share of the held base responses, plus N(0, sigma^2) noise);
// every non-influential row is then regenerated with N(0, sigma^2) noise,
// the model refit, and a hit recorded when u lands in the selected set.
std::vector<SweepPoint> snr_sweep(const DirectedGraph& g,
                                  const Eigen::VectorXd& y_base,
                                  const std::vector<int>& s_base,
                                  const Eigen::VectorXd& rho_base,
                                  const std::vector<double>& grid, int reps,
                                  double sigma, std::uint64_t seed,
                                  const FitConfig& fit_cfg = {});

// Default sweep grid 0.025 * k for k = 1..12.
std::vector<double> default_sweep_grid();

// Calibrated generator presets used by the simulation studies ("er", "sbm",
// "powerlaw"); see README for the edge-probability choices.
GeneratorSpec make_preset(const std::string& kind, int n);

}  // namespace snirkit
