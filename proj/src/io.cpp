#include "snirkit/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <utility>

#include "snirkit/errors.hpp"

namespace snirkit {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

bool parse_nonneg_int(const std::string& s, long& out) {
  if (s.empty() || s.size() > 18) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  if (s.size() > 1 && s[0] == '0') return false;  // no leading zeros
  out = std::strtol(s.c_str(), nullptr, 10);
  return true;
}

std::string lower(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

bool is_header_pair(const std::string& a, const std::string& b) {
  const std::string la = lower(a), lb = lower(b);
  return (la == "src" && lb == "dst") || (la == "source" && lb == "target") ||
         (la == "from" && lb == "to");
}

bool is_comment(const std::string& line, std::string* body) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '#') {
      if (body) *body = line.substr(i + 1);
      return true;
    }
    return false;
  }
  return false;
}

// Recognizes the "nodes: N" / "nodes = N" body written by save_network.
bool parse_node_pin(const std::string& body, long& out) {
  std::string s = lower(body);
  for (char& ch : s)
    if (ch == ':' || ch == '=') ch = ' ';
  auto toks = tokenize(s);
  return toks.size() == 2 && toks[0] == "nodes" && parse_nonneg_int(toks[1], out);
}

std::string where(const std::string& path, long lineno) {
  return path + ":" + std::to_string(lineno) + ": ";
}

std::string node_label(const std::vector<std::string>& labels, int i) {
  if (i >= 0 && i < static_cast<int>(labels.size())) return labels[i];
  return std::to_string(i);
}

// Shared table reader: node label + numeric columns, '#' comments skipped.
// `on_header` decides whether the first content line is a header (and may
// consume it); `on_row` gets (lineno, tokens) for every data line.
void scan_table(const std::string& path,
                const std::function<bool(long, const std::vector<std::string>&)>& on_header,
                const std::function<void(long, const std::vector<std::string>&)>& on_row) {
  std::ifstream in(path);
  if (!in) throw SnirError("cannot open " + path);
  std::string line;
  long lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment(line, nullptr)) continue;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (first) {
      first = false;
      if (on_header && on_header(lineno, toks)) continue;
    }
    on_row(lineno, toks);
  }
}

}  // namespace

LoadedNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SnirError("cannot open " + path);

  LoadedNetwork net;
  auto intern = [&](const std::string& s) {
    auto it = net.index.find(s);
    if (it != net.index.end()) return it->second;
    const int id = static_cast<int>(net.labels.size());
    net.index.emplace(s, id);
    net.labels.push_back(s);
    return id;
  };

  std::vector<std::pair<int, int>> edges;
  std::string line, body;
  long lineno = 0, pin = -1, self_loops = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_comment(line, &body)) {
      long v;
      if (pin < 0 && parse_node_pin(body, v)) pin = v;
      continue;
    }
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    if (first_content) {
      first_content = false;
      if (toks.size() == 2 && is_header_pair(toks[0], toks[1])) {
        net.warnings.push_back(where(path, lineno) + "header line skipped");
        continue;
      }
    }
    if (toks.size() != 2)
      throw ParseError(where(path, lineno) + "expected 2 tokens, got " +
                       std::to_string(toks.size()));
    if (toks[0] == toks[1]) {
      ++self_loops;
      intern(toks[0]);
      continue;
    }
    // Two statements: argument evaluation order must not decide label ids.
    const int from = intern(toks[0]);
    const int to = intern(toks[1]);
    edges.emplace_back(from, to);
  }
  if (edges.empty()) throw ParseError(path + ": no edges");
  if (self_loops > 0)
    net.warnings.push_back(path + ": dropped " + std::to_string(self_loops) +
                           " self-loop(s)");

  std::sort(edges.begin(), edges.end());
  const auto before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() < before)
    net.warnings.push_back(path + ": collapsed " +
                           std::to_string(before - edges.size()) +
                           " duplicate edge(s)");

  int n = static_cast<int>(net.labels.size());
  if (pin >= 0) {
    bool usable = pin >= static_cast<long>(net.labels.size()) && pin >= 2;
    std::vector<long> as_int(net.labels.size());
    for (std::size_t i = 0; usable && i < net.labels.size(); ++i)
      usable = parse_nonneg_int(net.labels[i], as_int[i]) && as_int[i] < pin;
    if (usable) {
      for (auto& [a, b] : edges) {
        a = static_cast<int>(as_int[a]);
        b = static_cast<int>(as_int[b]);
      }
      n = static_cast<int>(pin);
      net.labels.resize(n);
      net.index.clear();
      for (int i = 0; i < n; ++i) {
        net.labels[i] = std::to_string(i);
        net.index.emplace(net.labels[i], i);
      }
    } else {
      net.warnings.push_back(path +
                             ": node-count comment ignored (labels are not "
                             "integers inside its range)");
      pin = -1;
    }
  }
  net.graph = DirectedGraph::from_edges(n, edges);
  return net;
}

void save_network(const std::string& path, const DirectedGraph& g,
                  const std::vector<std::string>& labels) {
  if (!labels.empty() && static_cast<int>(labels.size()) != g.num_nodes())
    throw ConfigError("save_network: label count != node count");
  std::ostringstream os;
  os << "# nodes: " << g.num_nodes() << "\n";
  for (int i = 0; i < g.num_nodes(); ++i)
    for (const int* j = g.out_begin(i); j != g.out_end(i); ++j) {
      if (labels.empty())
        os << i << " " << *j << "\n";
      else
        os << labels[i] << " " << labels[*j] << "\n";
    }
  write_text(path, os.str());
}

LoadedResponses load_responses(const std::string& path,
                               const LoadedNetwork& net,
                               const ResponseOptions& opt) {
  const int n = net.graph.num_nodes();
  LoadedResponses res;
  res.y = Eigen::VectorXd::Zero(n);
  std::vector<char> assigned(n, 0);

  long want_col = 1;
  const bool by_name = [&] {
    if (opt.column.empty()) return false;
    long idx;
    if (parse_nonneg_int(opt.column, idx) || opt.column == "0") {
      if (opt.column == "0")
        throw ConfigError("response column 0 is the node label");
      want_col = idx;
      return false;
    }
    return true;
  }();

  long col = want_col;
  auto on_header = [&](long lineno, const std::vector<std::string>& toks) {
    if (by_name) {
      col = -1;
      for (std::size_t i = 1; i < toks.size(); ++i)
        if (lower(toks[i]) == lower(opt.column)) {
          col = static_cast<long>(i);
          break;
        }
      if (col < 0)
        throw ParseError(where(path, lineno) + "response column '" +
                         opt.column + "' not found in header");
      return true;
    }
    // Positional column: the line is a header only if its value cell is not
    // a number AND its label cell is not a graph node; a bad cell on a known
    // node must surface as a parse error, not vanish as a "header".
    double v;
    if (static_cast<long>(toks.size()) > col && parse_double(toks[col], v))
      return false;
    if (net.index.count(toks[0]) > 0) return false;
    res.warnings.push_back(where(path, lineno) + "header line skipped");
    return true;
  };
  auto on_row = [&](long lineno, const std::vector<std::string>& toks) {
    if (static_cast<long>(toks.size()) <= col)
      throw ParseError(where(path, lineno) + "expected at least " +
                       std::to_string(col + 1) + " columns");
    auto it = net.index.find(toks[0]);
    if (it == net.index.end()) {
      ++res.ignored_rows;
      return;
    }
    const int node = it->second;
    if (assigned[node])
      throw ParseError(where(path, lineno) + "duplicate response for node '" +
                       toks[0] + "'");
    double v;
    if (!parse_double(toks[col], v))
      throw ParseError(where(path, lineno) + "non-numeric value '" +
                       toks[col] + "'");
    if (opt.log1p_transform) {
      if (v <= -1.0)
        throw ParseError(where(path, lineno) +
                         "log transform requires values > -1");
      v = std::log1p(v);
    }
    assigned[node] = 1;
    res.y[node] = v;
  };
  scan_table(path, on_header, on_row);

  int missing = 0;
  int first_missing = -1;
  for (int i = 0; i < n; ++i)
    if (!assigned[i]) {
      ++missing;
      if (first_missing < 0) first_missing = i;
    }
  if (missing > 0) {
    if (opt.missing == ResponseOptions::Missing::Error)
      throw ParseError(path + ": " + std::to_string(missing) +
                       " node(s) without a response (first: '" +
                       node_label(net.labels, first_missing) + "')");
    res.filled_missing = missing;
    res.warnings.push_back(path + ": filled " + std::to_string(missing) +
                           " missing response(s) with 0");
  }
  if (res.ignored_rows > 0)
    res.warnings.push_back(path + ": ignored " +
                           std::to_string(res.ignored_rows) +
                           " row(s) whose label is not a graph node");
  return res;
}

Eigen::MatrixXd load_covariates(const std::string& path,
                                const LoadedNetwork& net,
                                std::vector<std::string>* warnings) {
  const int n = net.graph.num_nodes();
  Eigen::MatrixXd Z;
  int p = -1;
  std::vector<char> assigned(n, 0);
  int ignored = 0;

  auto on_header = [&](long lineno, const std::vector<std::string>& toks) {
    if (toks.size() < 2 || net.index.count(toks[0]) > 0) return false;
    double v;
    for (std::size_t i = 1; i < toks.size(); ++i)
      if (!parse_double(toks[i], v)) {
        if (warnings)
          warnings->push_back(where(path, lineno) + "header line skipped");
        return true;
      }
    return false;
  };
  auto on_row = [&](long lineno, const std::vector<std::string>& toks) {
    if (static_cast<int>(toks.size()) < 2)
      throw ParseError(where(path, lineno) + "expected node and covariates");
    if (p < 0) {
      p = static_cast<int>(toks.size()) - 1;
      Z.setZero(n, p);
    } else if (static_cast<int>(toks.size()) - 1 != p) {
      throw ParseError(where(path, lineno) + "expected " + std::to_string(p) +
                       " covariate column(s), got " +
                       std::to_string(toks.size() - 1));
    }
    auto it = net.index.find(toks[0]);
    if (it == net.index.end()) {
      ++ignored;
      return;
    }
    const int node = it->second;
    if (assigned[node])
      throw ParseError(where(path, lineno) + "duplicate covariates for node '" +
                       toks[0] + "'");
    for (int k = 0; k < p; ++k) {
      double v;
      if (!parse_double(toks[k + 1], v))
        throw ParseError(where(path, lineno) + "non-numeric value '" +
                         toks[k + 1] + "'");
      Z(node, k) = v;
    }
    assigned[node] = 1;
  };
  scan_table(path, on_header, on_row);

  if (p < 0) throw ParseError(path + ": no data rows");
  for (int i = 0; i < n; ++i)
    if (!assigned[i])
      throw ParseError(path + ": node '" + node_label(net.labels, i) +
                       "' has no covariates");
  if (ignored > 0 && warnings)
    warnings->push_back(path + ": ignored " + std::to_string(ignored) +
                        " row(s) whose label is not a graph node");
  return Z;
}

std::pair<std::vector<int>, std::vector<int>> load_periods(
    const std::string& path, const LoadedNetwork& net) {
  const int n = net.graph.num_nodes();
  std::vector<int> period(n, 0);

  auto on_header = [&](long, const std::vector<std::string>& toks) {
    double v;
    return toks.size() >= 2 && net.index.count(toks[0]) == 0 &&
           !parse_double(toks[1], v);
  };
  auto on_row = [&](long lineno, const std::vector<std::string>& toks) {
    if (toks.size() != 2)
      throw ParseError(where(path, lineno) + "expected node and period");
    auto it = net.index.find(toks[0]);
    if (it == net.index.end()) return;
    if (period[it->second] != 0)
      throw ParseError(where(path, lineno) + "duplicate period for node '" +
                       toks[0] + "'");
    if (toks[1] == "1")
      period[it->second] = 1;
    else if (toks[1] == "2")
      period[it->second] = 2;
    else
      throw ParseError(where(path, lineno) + "period must be 1 or 2, got '" +
                       toks[1] + "'");
  };
  scan_table(path, on_header, on_row);

  std::pair<std::vector<int>, std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (period[i] == 0)
      throw ParseError(path + ": node '" + node_label(net.labels, i) +
                       "' has no period");
    (period[i] == 1 ? out.first : out.second).push_back(i);
  }
  return out;
}

nlohmann::ordered_json fit_report_json(
    const FitResult& fr, const std::vector<std::string>& labels) {
  nlohmann::ordered_json j;
  auto& pathj = j["path"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < fr.path.picks.size(); ++k) {
    nlohmann::ordered_json step;
    step["step"] = static_cast<int>(k) + 1;
    step["pick"] = node_label(labels, fr.path.picks[k]);
    step["rss"] = fr.path.rss[k];
    step["ebic"] = fr.path.ebic[k];
    pathj.push_back(std::move(step));
  }
  j["k_star"] = fr.k_star;
  auto& sel = j["selected"] = nlohmann::ordered_json::array();
  for (int node : fr.selected) sel.push_back(node_label(labels, node));
  auto& coef = j["coef"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < fr.selected.size(); ++i) {
    nlohmann::ordered_json c;
    c["node"] = node_label(labels, fr.selected[i]);
    c["rho"] = fr.rho_hat[static_cast<int>(i)];
    c["se"] = fr.se[static_cast<int>(i)];
    c["t"] = fr.t_value[static_cast<int>(i)];
    c["p"] = fr.p_value[static_cast<int>(i)];
    coef.push_back(std::move(c));
  }
  j["r2"] = fr.r2;
  j["adj_r2"] = fr.adj_r2;
  j["sigma2"] = fr.sigma2_hat;
  j["warnings"] = fr.warnings;
  return j;
}

nlohmann::ordered_json impact_report_json(
    const ImpactReport& report, const std::vector<std::string>& labels) {
  nlohmann::ordered_json j;
  static const char* kOrder[] = {"snir", "in_degree", "response",
                                 "betweenness", "harmonic"};
  auto emit = [&](const std::string& name, const MethodImpact& m) {
    nlohmann::ordered_json mj;
    auto& sel = mj["selected"] = nlohmann::ordered_json::array();
    for (int node : m.selected) sel.push_back(node_label(labels, node));
    mj["delta_R"] = m.delta_r;
    mj["delta_F"] = m.delta_f;
    if (m.delta_r_clipped) mj["delta_R_clipped"] = true;
    j[name] = std::move(mj);
  };
  for (const char* name : kOrder) {
    auto it = report.methods.find(name);
    if (it != report.methods.end()) emit(it->first, it->second);
  }
  for (const auto& [name, m] : report.methods)
    if (!j.contains(name)) emit(name, m);
  j["size"] = report.size;
  return j;
}

nlohmann::ordered_json dynamic_report_json(
    const DynamicFit& dyn, const std::vector<std::string>& labels) {
  nlohmann::ordered_json j;
  j["period1"] = dyn.period1_empty ? nlohmann::ordered_json(nullptr)
                                   : fit_report_json(dyn.period1, labels);
  j["period2"] = dyn.period2_empty ? nlohmann::ordered_json(nullptr)
                                   : fit_report_json(dyn.period2, labels);
  j["warnings"] = dyn.warnings;
  return j;
}

std::string study_csv(const std::vector<StudyResult>& rows) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "N,TPR,FPR,CFP,Err,secs_per_fit\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.mean.tpr << ',' << r.mean.fpr << ',' << r.mean.cfp
       << ',' << r.mean.err << ',' << r.secs_per_fit << '\n';
  return os.str();
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "coef,detection\n";
  for (const auto& pt : points) os << pt.coef << ',' << pt.detection << '\n';
  return os.str();
}

std::string centrality_csv(const std::vector<std::string>& labels,
                           const std::vector<int>& in_degree,
                           const std::vector<double>& betweenness,
                           const std::vector<double>& harmonic) {
  const std::size_t n = in_degree.size();
  if (betweenness.size() != n || harmonic.size() != n)
    throw ConfigError("centrality_csv: length mismatch");
  std::ostringstream os;
  os << std::setprecision(10);
  os << "node,in_degree,betweenness,harmonic\n";
  for (std::size_t i = 0; i < n; ++i)
    os << node_label(labels, static_cast<int>(i)) << ',' << in_degree[i]
       << ',' << betweenness[i] << ',' << harmonic[i] << '\n';
  return os.str();
}

namespace {

GeneratorSpec parse_generator(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("generator must be an object");
  if (doc.contains("preset")) {
    for (const auto& [key, value] : doc.items()) {
      (void)value;
      if (key != "preset" && key != "n")
        throw ConfigError("generator preset takes only 'n', got '" + key + "'");
    }
    if (!doc.contains("n")) throw ConfigError("generator preset needs 'n'");
    return make_preset(doc["preset"].get<std::string>(), doc["n"].get<int>());
  }
  GeneratorSpec g;
  bool have_kind = false, have_n = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "kind") {
      const std::string k = lower(value.get<std::string>());
      if (k == "er")
        g.kind = GeneratorSpec::Kind::ER;
      else if (k == "sbm")
        g.kind = GeneratorSpec::Kind::SBM;
      else if (k == "powerlaw")
        g.kind = GeneratorSpec::Kind::PowerLaw;
      else
        throw ConfigError("unknown generator kind '" + k + "'");
      have_kind = true;
    } else if (key == "n") {
      g.n = value.get<int>();
      have_n = true;
    } else if (key == "p") {
      g.p = value.get<double>();
    } else if (key == "k_blocks") {
      g.k_blocks = value.get<int>();
    } else if (key == "p_in") {
      g.p_in = value.get<double>();
    } else if (key == "p_out") {
      g.p_out = value.get<double>();
    } else if (key == "alpha") {
      g.alpha = value.get<double>();
    } else if (key == "support_cap") {
      g.support_cap = value.get<int>();
    } else if (key == "seed") {
      g.seed = value.get<std::uint64_t>();
    } else {
      throw ConfigError("unknown generator key '" + key + "'");
    }
  }
  if (!have_kind || !have_n) throw ConfigError("generator needs 'kind' and 'n'");
  return g;
}

}  // namespace

StudyConfig parse_study_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("study config must be an object");
  StudyConfig cfg;
  bool have_gen = false;
  for (const auto& [key, value] : doc.items()) {
    if (key == "generator") {
      cfg.gen = parse_generator(value);
      have_gen = true;
    } else if (key == "s1_size") {
      cfg.s1_size = value.get<int>();
    } else if (key == "rho_lo") {
      cfg.rho_lo = value.get<double>();
    } else if (key == "rho_hi") {
      cfg.rho_hi = value.get<double>();
    } else if (key == "mu") {
      cfg.mu = value.get<double>();
    } else if (key == "sigma") {
      cfg.noise.sigma = value.get<double>();
    } else if (key == "heteroskedastic") {
      cfg.noise.heteroskedastic = value.get<bool>();
    } else if (key == "het_lo") {
      cfg.noise.het_lo = value.get<double>();
    } else if (key == "het_hi") {
      cfg.noise.het_hi = value.get<double>();
    } else if (key == "reps") {
      cfg.reps = value.get<int>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "gamma") {
      cfg.fit.screen.gamma = value.get<double>();
    } else if (key == "m") {
      cfg.fit.screen.m = value.get<int>();
    } else if (key == "K") {
      cfg.fit.K = value.get<int>();
    } else if (key == "cov_p") {
      cfg.cov_p = value.get<int>();
    } else if (key == "cov_ar") {
      cfg.cov_ar = value.get<double>();
    } else if (key == "max_redraws") {
      cfg.max_redraws = value.get<int>();
    } else {
      throw ConfigError("unknown study config key '" + key + "'");
    }
  }
  if (!have_gen) throw ConfigError("study config needs a 'generator'");
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw SnirError("cannot write " + path);
  out << text;
  if (!out) throw SnirError("failed writing " + path);
}

}  // namespace snirkit
