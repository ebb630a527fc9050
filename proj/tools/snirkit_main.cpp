// snirkit: influence-set selection on directed networks.
//
// Commands: fit, simulate, generate, centrality, compare, sweep, dynamic.
// Exit codes: 0 success, 1 usage error, 2 data/model error.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "snirkit/baselines.hpp"
#include "snirkit/centrality.hpp"
#include "snirkit/errors.hpp"
#include "snirkit/ext.hpp"
#include "snirkit/io.hpp"
#include "snirkit/simlab.hpp"
#include "snirkit/snir.hpp"

namespace {

using snirkit::FitConfig;
using snirkit::LoadedNetwork;
using snirkit::ResponseOptions;

struct CommonArgs {
  std::string edges, responses, covariates, periods;
  std::string response_col;
  bool log_transform = false;
  std::string missing = "error";
  double gamma = 2.0 / 3.0;
  int m = 0;
  int K = 0;
  std::uint64_t seed = 0;
  int reps = 100;
  std::string preset;
  int n = 0;
  int s1 = 10;
  std::string out = "-";
};

void add_io_flags(CLI::App* cmd, CommonArgs& a, bool need_responses) {
  cmd->add_option("--edges", a.edges, "Edge list file (follower followed)")
      ->required();
  auto* rsp = cmd->add_option("--responses", a.responses,
                              "Response table (node, value columns)");
  if (need_responses) rsp->required();
  cmd->add_option("--response-col", a.response_col,
                  "Response column: header name or 0-based index (default: "
                  "second column)");
  cmd->add_flag("--log", a.log_transform,
                "Apply log1p to the response values");
  cmd->add_option("--missing", a.missing,
                  "Nodes without a response: error | zero")
      ->check(CLI::IsMember({"error", "zero"}));
}

void add_screen_flags(CLI::App* cmd, CommonArgs& a) {
  auto* gam = cmd->add_option(
      "--gamma", a.gamma,
      "Screening exponent: keep floor(N^gamma) candidates, gamma in (0,1]. "
      "Default 2/3; 5/9 is the theoretical floor.");
  auto* m = cmd->add_option("--m", a.m, "Explicit candidate count (overrides "
                                        "--gamma)");
  gam->excludes(m);
  m->excludes(gam);
  cmd->add_option("--K", a.K,
                  "Forward-addition budget (default max(floor(N^(5/9)), K))");
}

void add_out_flag(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--out", a.out, "Output path ('-' = stdout)");
}

ResponseOptions response_options(const CommonArgs& a) {
  ResponseOptions opt;
  opt.column = a.response_col;
  opt.log1p_transform = a.log_transform;
  opt.missing = a.missing == "zero" ? ResponseOptions::Missing::Zero
                                    : ResponseOptions::Missing::Error;
  return opt;
}

FitConfig fit_config(const CommonArgs& a) {
  FitConfig fc;
  fc.screen.gamma = a.gamma;
  fc.screen.m = a.m;
  fc.K = a.K;
  return fc;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

nlohmann::ordered_json config_echo(const std::string& command,
                                   const CommonArgs& a) {
  nlohmann::ordered_json j;
  j["command"] = command;
  if (!a.edges.empty()) j["edges"] = a.edges;
  if (!a.responses.empty()) j["responses"] = a.responses;
  if (!a.response_col.empty()) j["response_col"] = a.response_col;
  if (!a.covariates.empty()) j["covariates"] = a.covariates;
  if (!a.periods.empty()) j["periods"] = a.periods;
  j["log"] = a.log_transform;
  j["missing"] = a.missing;
  if (a.m > 0)
    j["m"] = a.m;
  else
    j["gamma"] = a.gamma;
  j["K"] = a.K;
  j["seed"] = a.seed;
  if (!a.preset.empty()) {
    j["preset"] = a.preset;
    j["n"] = a.n;
    j["s1"] = a.s1;
    j["reps"] = a.reps;
  }
  j["out"] = a.out;
  return j;
}

void print_coef_table(const snirkit::FitResult& fr,
                      const std::vector<std::string>& labels) {
  std::ostream& os = std::cout;
  os << std::left << std::setw(16) << "node" << std::right << std::setw(12)
     << "rho" << std::setw(12) << "se" << std::setw(10) << "t" << std::setw(12)
     << "p" << "\n";
  for (int i = 0; i < static_cast<int>(fr.selected.size()); ++i) {
    const int node = fr.selected[i];
    const std::string label = node < static_cast<int>(labels.size())
                                  ? labels[node]
                                  : std::to_string(node);
    std::ostringstream p;
    p << std::setprecision(3) << std::scientific << fr.p_value[i];
    os << std::left << std::setw(16) << label << std::right << std::fixed
       << std::setprecision(4) << std::setw(12) << fr.rho_hat[i]
       << std::setw(12) << fr.se[i] << std::setprecision(2) << std::setw(10)
       << fr.t_value[i] << std::setw(12) << p.str() << "\n";
    os.unsetf(std::ios::floatfield);
    os << std::setprecision(6);
  }
  os << "selected " << fr.selected.size() << " of " << fr.m_size
     << " candidates (k* = " << fr.k_star << ")\n";
  os << "sigma2 = " << fr.sigma2_hat << ", R2 = " << fr.r2
     << ", adj R2 = " << fr.adj_r2 << "\n";
}

Eigen::VectorXd load_y(const CommonArgs& a, const LoadedNetwork& net) {
  auto res = snirkit::load_responses(a.responses, net, response_options(a));
  print_warnings(res.warnings);
  if (!a.covariates.empty()) {
    std::vector<std::string> warnings;
    Eigen::MatrixXd Z = snirkit::load_covariates(a.covariates, net, &warnings);
    print_warnings(warnings);
    return snirkit::profile_covariates(res.y, Z);
  }
  return res.y;
}

int cmd_fit(const CommonArgs& a) {
  LoadedNetwork net = snirkit::load_network(a.edges);
  print_warnings(net.warnings);
  const Eigen::VectorXd y = load_y(a, net);
  snirkit::FitResult fr = snirkit::fit(net.graph, y, fit_config(a));
  print_warnings(fr.warnings);
  print_coef_table(fr, net.labels);
  nlohmann::ordered_json report = snirkit::fit_report_json(fr, net.labels);
  report["config"] = config_echo("fit", a);
  snirkit::write_text(a.out, report.dump(2) + "\n");
  return 0;
}

int cmd_simulate(const CommonArgs& a) {
  snirkit::StudyConfig cfg;
  cfg.gen = snirkit::make_preset(a.preset, a.n);
  cfg.s1_size = a.s1;
  cfg.reps = a.reps;
  cfg.seed = a.seed;
  cfg.fit = fit_config(a);
  snirkit::StudyResult res = snirkit::run_study(cfg);
  std::ostringstream os;
  os << "# config: " << config_echo("simulate", a).dump() << "\n"
     << snirkit::study_csv({res});
  snirkit::write_text(a.out, os.str());
  return 0;
}

int cmd_generate(const CommonArgs& a) {
  snirkit::GeneratorSpec spec = snirkit::make_preset(a.preset, a.n);
  spec.seed = a.seed;
  snirkit::DirectedGraph g = snirkit::generate(spec);
  snirkit::save_network(a.out, g);
  return 0;
}

int cmd_centrality(const CommonArgs& a) {
  LoadedNetwork net = snirkit::load_network(a.edges);
  print_warnings(net.warnings);
  std::vector<double> betw, harm;
  snirkit::betweenness_and_harmonic(net.graph, betw, harm);
  const std::string csv = snirkit::centrality_csv(
      net.labels, net.graph.in_degrees(), betw, harm);
  snirkit::write_text(a.out, csv);
  return 0;
}

int cmd_compare(const CommonArgs& a, int size_override) {
  LoadedNetwork net = snirkit::load_network(a.edges);
  print_warnings(net.warnings);
  const Eigen::VectorXd y = load_y(a, net);
  snirkit::ImpactReport rep =
      snirkit::compare_methods(net.graph, y, fit_config(a), size_override);
  nlohmann::ordered_json report = snirkit::impact_report_json(rep, net.labels);
  report["config"] = config_echo("compare", a);
  snirkit::write_text(a.out, report.dump(2) + "\n");
  return 0;
}

int cmd_sweep(const CommonArgs& a, double sigma) {
  LoadedNetwork net = snirkit::load_network(a.edges);
  print_warnings(net.warnings);
  const Eigen::VectorXd y = load_y(a, net);
  const FitConfig fc = fit_config(a);
  snirkit::FitResult base = snirkit::fit(net.graph, y, fc);
  print_warnings(base.warnings);
  if (base.selected.empty())
    throw snirkit::DegenerateFitError(
        "sweep: the base fit selected no influential nodes");
  auto points =
      snirkit::snr_sweep(net.graph, y, base.selected, base.rho_hat,
                         snirkit::default_sweep_grid(), a.reps, sigma, a.seed,
                         fc);
  std::ostringstream os;
  os << "# config: " << config_echo("sweep", a).dump() << "\n"
     << snirkit::sweep_csv(points);
  snirkit::write_text(a.out, os.str());
  return 0;
}

int cmd_dynamic(const CommonArgs& a) {
  LoadedNetwork net = snirkit::load_network(a.edges);
  print_warnings(net.warnings);
  const Eigen::VectorXd y = load_y(a, net);
  auto [j1, j2] = snirkit::load_periods(a.periods, net);
  const FitConfig fc = fit_config(a);
  snirkit::PeriodSplit split =
      snirkit::screen_periods(net.graph, j1, j2, fc.screen);
  snirkit::DynamicFit dyn = snirkit::dynamic_fit(net.graph, y, split, fc);
  print_warnings(dyn.warnings);
  nlohmann::ordered_json report = snirkit::dynamic_report_json(dyn, net.labels);
  report["config"] = config_echo("dynamic", a);
  snirkit::write_text(a.out, report.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env = std::getenv("SNIRKIT_THREADS")) {
    const int t = std::atoi(env);
#ifdef _OPENMP
    if (t > 0) omp_set_num_threads(t);
#else
    (void)t;
#endif
  }

  CLI::App app{"snirkit: influence-set selection on directed networks"};
  app.require_subcommand(1);
  CommonArgs a;

  auto* fit = app.add_subcommand("fit", "Screen, select, and estimate "
                                        "influence coefficients");
  add_io_flags(fit, a, true);
  add_screen_flags(fit, a);
  fit->add_option("--covariates", a.covariates,
                  "Covariate table profiled out of the response");
  fit->add_option("--seed", a.seed, "Accepted for uniformity (fit is "
                                    "deterministic)");
  add_out_flag(fit, a);

  auto* sim = app.add_subcommand("simulate", "Replication study on a "
                                             "synthetic network");
  sim->add_option("--preset", a.preset, "Graph family")
      ->check(CLI::IsMember({"er", "sbm", "powerlaw"}))
      ->required();
  sim->add_option("--n", a.n, "Node count")->required()->check(CLI::PositiveNumber);
  sim->add_option("--s1", a.s1, "Influential-set size")->check(CLI::PositiveNumber);
  sim->add_option("--reps", a.reps, "Replications")->check(CLI::PositiveNumber);
  sim->add_option("--seed", a.seed, "Master seed");
  add_screen_flags(sim, a);
  add_out_flag(sim, a);

  auto* gen = app.add_subcommand("generate", "Write a synthetic edge list");
  gen->add_option("--preset", a.preset, "Graph family")
      ->check(CLI::IsMember({"er", "sbm", "powerlaw"}))
      ->required();
  gen->add_option("--n", a.n, "Node count")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", a.seed, "Seed");
  add_out_flag(gen, a);

  auto* cent = app.add_subcommand("centrality", "In-degree, betweenness, and "
                                                "harmonic centrality table");
  cent->add_option("--edges", a.edges, "Edge list file")->required();
  add_out_flag(cent, a);

  int compare_size = 0;
  auto* cmp = app.add_subcommand("compare", "Influence-set selection rules "
                                            "compared at matched size");
  add_io_flags(cmp, a, true);
  add_screen_flags(cmp, a);
  cmp->add_option("--s1", compare_size,
                  "Matched selection size (default: the fit's k*)");
  cmp->add_option("--seed", a.seed, "Accepted for uniformity");
  add_out_flag(cmp, a);

  double sweep_sigma = 0.5;
  auto* swp = app.add_subcommand("sweep", "Detection rate of one injected "
                                          "influential node per coefficient");
  add_io_flags(swp, a, true);
  add_screen_flags(swp, a);
  swp->add_option("--reps", a.reps, "Replications per grid point")
      ->check(CLI::PositiveNumber);
  swp->add_option("--seed", a.seed, "Master seed");
  swp->add_option("--sigma", sweep_sigma, "Regeneration noise sd");
  add_out_flag(swp, a);

  auto* dyn = app.add_subcommand("dynamic", "Two-period fit with per-period "
                                            "screening");
  add_io_flags(dyn, a, true);
  add_screen_flags(dyn, a);
  dyn->add_option("--periods", a.periods, "Node-to-period table (1 or 2)")
      ->required();
  dyn->add_option("--covariates", a.covariates,
                  "Covariate table profiled out of the response");
  add_out_flag(dyn, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (fit->parsed()) return cmd_fit(a);
    if (sim->parsed()) return cmd_simulate(a);
    if (gen->parsed()) return cmd_generate(a);
    if (cent->parsed()) return cmd_centrality(a);
    if (cmp->parsed()) return cmd_compare(a, compare_size);
    if (swp->parsed()) return cmd_sweep(a, sweep_sigma);
    if (dyn->parsed()) return cmd_dynamic(a);
  } catch (const snirkit::SnirError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
