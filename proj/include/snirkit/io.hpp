#pragma once

// File ingestion and report emission: edge lists with string labels,
// response/covariate/period tables keyed by those labels, and the JSON/CSV
// report formats the command-line tool writes.

#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "snirkit/baselines.hpp"
#include "snirkit/ext.hpp"
#include "snirkit/graph.hpp"
#include "snirkit/simlab.hpp"
#include "snirkit/snir.hpp"

namespace snirkit {

// A graph together with the string-label <-> index mapping from the input
// file, kept so reports can speak the caller's node names.
struct LoadedNetwork {
  DirectedGraph graph;
  std::vector<std::string> labels;              // index -> label
  std::unordered_map<std::string, int> index;   // label -> index
  std::vector<std::string> warnings;
};

// Reads a directed edge list: one "follower followed" pair per line, tokens
// separated by whitespace and/or commas, '#' lines ignored. Labels are
// arbitrary strings indexed by first appearance. A first line whose tokens
// are a known header pair (src/dst, source/target, from/to, any case) is
// skipped with a warning. Duplicate edges are collapsed and self-loops
// dropped, each with a counting warning. A "# nodes: N" comment (written by
// save_network) pins the node count and, when all labels are integers in
// [0, N), the identity label mapping -- this makes save/load a round trip
// even with isolated nodes. Parse problems throw ParseError with the line
// number; a file with no edges is an error.
LoadedNetwork load_network(const std::string& path);

// Writes "# nodes: N" followed by one "follower followed" line per edge.
// With `labels` given (size N), writes those instead of numeric indices
// (round-tripping then relies on the labels, not the node-count pin).
void save_network(const std::string& path, const DirectedGraph& g,
                  const std::vector<std::string>& labels = {});

struct ResponseOptions {
  // Which column holds the value: a header name, a 0-based index in string
  // form, or "" for the second column. Column 0 is always the node label.
  std::string column;
  bool log1p_transform = false;         // store log1p(value)
  enum class Missing { Error, Zero } missing = Missing::Error;
};

struct LoadedResponses {
  Eigen::VectorXd y;
  int filled_missing = 0;   // nodes defaulted to 0 under Missing::Zero
  int ignored_rows = 0;     // rows whose label is not a graph node
  std::vector<std::string> warnings;
};

// Reads a delimited table of node label + numeric columns and returns the
// vector aligned to graph indices. Unknown labels are ignored with a
// warning; duplicate labels, non-numeric cells, and (under Missing::Error)
// uncovered nodes throw ParseError.
LoadedResponses load_responses(const std::string& path,
                               const LoadedNetwork& net,
                               const ResponseOptions& opt = {});

// Reads node label + p numeric columns into an n x p matrix (p from the
// first data row). Every graph node must appear exactly once.
Eigen::MatrixXd load_covariates(const std::string& path,
                                const LoadedNetwork& net,
                                std::vector<std::string>* warnings = nullptr);

// Reads node label + period (1 or 2); every node must be assigned. Returns
// the two ascending index sets.
std::pair<std::vector<int>, std::vector<int>> load_periods(
    const std::string& path, const LoadedNetwork& net);

// --- Report formats (insertion-ordered JSON for diffable output) ---

// {"path":[{"step","pick","rss","ebic"}...], "k_star", "selected":[labels],
//  "coef":[{"node","rho","se","t","p"}...], "r2", "adj_r2", "sigma2",
//  "warnings":[...]}
nlohmann::ordered_json fit_report_json(const FitResult& fr,
                                       const std::vector<std::string>& labels);

// {"rule": {"selected":[labels], "delta_R", "delta_F"}, ...} keyed by rule
// name, plus "size".
nlohmann::ordered_json impact_report_json(
    const ImpactReport& report, const std::vector<std::string>& labels);

nlohmann::ordered_json dynamic_report_json(
    const DynamicFit& dyn, const std::vector<std::string>& labels);

// Header "N,TPR,FPR,CFP,Err,secs_per_fit" + one row per study.
std::string study_csv(const std::vector<StudyResult>& rows);

// Header "coef,detection" + one row per sweep grid point.
std::string sweep_csv(const std::vector<SweepPoint>& points);

// Header "node,in_degree,betweenness,harmonic" + one row per node.
std::string centrality_csv(const std::vector<std::string>& labels,
                           const std::vector<int>& in_degree,
                           const std::vector<double>& betweenness,
                           const std::vector<double>& harmonic);

// Study configuration as a JSON document: {"generator": {"kind","n",...},
// "s1_size", "rho_lo", "rho_hi", "mu", "sigma", "heteroskedastic", "reps",
// "seed", "gamma", "m", "K", "cov_p", "cov_ar"}. Unknown keys throw
// ConfigError; omitted keys keep their defaults.
StudyConfig parse_study_config(const nlohmann::json& doc);

// Writes text to a file (throws SnirError on failure) or, with path "-",
// to stdout.
void write_text(const std::string& path, const std::string& text);

}  // namespace snirkit
