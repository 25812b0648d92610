// Copyright 2026 The QMCMC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmcmc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qmcmc/errors.hpp"
#include "qmcmc/observables.hpp"
#include "qmcmc/parallel.hpp"
#include "qmcmc/trajectory.hpp"

namespace qmcmc {

namespace {

struct KeyInfo {
  const char* name;
  const char* help;
};

// Keys shared by every command; each is both a `--flag` and a config key.
constexpr KeyInfo kModelKeys[] = {
    {"model", "tfim | graph | file"},
    {"n", "principal qubit count (experiment: comma list)"},
    {"hj", "transverse field h/J (experiment: comma list)"},
    {"jj", "coupling J (energy unit, default 1)"},
    {"beta", "inverse temperature(s) in 1/J, comma list"},
    {"g", "system-ancilla coupling (default 0.005)"},
    {"nt", "Trotter steps per interaction period (default 5000)"},
    {"ncycle", "interaction periods per comb cycle (default 500; graph experiment 100)"},
    {"pe", "Erdos-Renyi edge probability (experiment: comma list)"},
    {"seed", "random seed (default 0)"},
    {"hamiltonian", "Hamiltonian file for --model file"},
    {"preset", "graph field preset a | b | c (4 vertices)"},
    {"edges", "explicit graph edges, e.g. 0-1:0.5,1-3:0.2"},
    {"omega-m", "comb amplitude (default: exact spectral width)"},
    {"threshold", "ratio used for each << in the hierarchy report (default 10)"},
    {"qubit-cap", "maximum N_s + M (default 12)"},
};
constexpr KeyInfo kSampleKeys[] = {
    {"shots", "number of shots (default 1000)"},
    {"burnin", "burn-in cycles per shot (default 10)"},
};
constexpr KeyInfo kExperimentKeys[] = {
    {"mode", "steady | repeated"},
    {"sweeps", "cycle applications for --mode repeated"},
    {"instances", "random graphs per (n, p_e) (default 1)"},
};
constexpr KeyInfo kValidateKeys[] = {
    {"epsilon", "target Trotter error for the step suggestion (default 0.01)"},
};
// Output keys, accepted in config files as well.
constexpr KeyInfo kOutputKeys[] = {
    {"format", "csv | json"},
    {"out", "output file (default stdout)"},
    {"workers", "worker threads (default QMCMC_WORKERS or hardware concurrency)"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Values {
 public:
  explicit Values(const std::map<std::string, std::string>& v) : v_(v) {}

  bool has(const std::string& key) const { return v_.count(key) > 0; }

  const std::string& require(const std::string& key) const {
    auto it = v_.find(key);
    if (it == v_.end()) throw UsageError("missing required --" + key);
    return it->second;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? v_.at(key) : fallback;
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? parse_double(key, v_.at(key)) : fallback;
  }

  long long integer(const std::string& key, long long fallback) const {
    return has(key) ? parse_int(key, v_.at(key)) : fallback;
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const {
    if (!has(key)) return fallback;
    std::vector<double> out;
    for (const auto& item : split(v_.at(key))) out.push_back(parse_double(key, item));
    if (out.empty()) throw UsageError("--" + key + " needs at least one value");
    return out;
  }

  std::vector<int> integers(const std::string& key, std::vector<int> fallback) const {
    if (!has(key)) return fallback;
    std::vector<int> out;
    for (const auto& item : split(v_.at(key))) out.push_back(static_cast<int>(parse_int(key, item)));
    if (out.empty()) throw UsageError("--" + key + " needs at least one value");
    return out;
  }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto t = trim(item);
      if (!t.empty()) out.emplace_back(t);
    }
    return out;
  }

  static double parse_double(const std::string& key, std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw UsageError("--" + key + ": '" + std::string(s) + "' is not a number");
    }
    return v;
  }

  static long long parse_int(const std::string& key, std::string_view s) {
    s = trim(s);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      throw UsageError("--" + key + ": '" + std::string(s) + "' is not an integer");
    }
    return v;
  }

 private:
  const std::map<std::string, std::string>& v_;
};

std::vector<Edge> parse_edges(const std::string& text) {
  std::vector<Edge> edges;
  for (const auto& item : Values::split(text)) {
    const auto dash = item.find('-');
    const auto colon = item.find(':');
    if (dash == std::string::npos || colon == std::string::npos || colon < dash) {
      throw UsageError("--edges: expected j-k:weight, got '" + item + "'");
    }
    Edge e;
    e.j = static_cast<int>(Values::parse_int("edges", item.substr(0, dash)));
    e.k = static_cast<int>(Values::parse_int("edges", item.substr(dash + 1, colon - dash - 1)));
    e.weight = Values::parse_double("edges", item.substr(colon + 1));
    if (e.j > e.k) std::swap(e.j, e.k);
    edges.push_back(e);
  }
  return edges;
}

std::set<std::string> allowed_keys(Command command) {
  std::set<std::string> keys;
  for (const auto& k : kModelKeys) keys.insert(k.name);
  for (const auto& k : kOutputKeys) keys.insert(k.name);
  if (command == Command::Sample)
    for (const auto& k : kSampleKeys) keys.insert(k.name);
  if (command == Command::Experiment)
    for (const auto& k : kExperimentKeys) keys.insert(k.name);
  if (command == Command::Validate)
    for (const auto& k : kValidateKeys) keys.insert(k.name);
  return keys;
}

struct Model {
  HamiltonianSpec spec;
  ResultRow row_template;
};

Model build_model(const Values& v, bool experiment_context) {
  const std::string model = v.text("model", "tfim");
  Model m;
  if (model == "tfim") {
    if (v.has("hamiltonian") || v.has("edges") || v.has("preset") || v.has("pe")) {
      throw UsageError("--model tfim conflicts with --hamiltonian/--edges/--preset/--pe");
    }
    const int n = static_cast<int>(v.integer("n", 2));
    const double j = v.number("jj", 1.0);
    const double hj = v.number("hj", 1.0);
    m.spec = build_tfim(n, j, hj * j);
    m.row_template.hj = hj;
  } else if (model == "graph") {
    if (v.has("hamiltonian") || v.has("hj")) throw UsageError("--model graph conflicts with --hamiltonian/--hj");
    GraphInstance g;
    if (v.has("preset") || v.has("edges")) {
      if (v.has("pe")) throw UsageError("--pe conflicts with --preset/--edges");
      if (v.has("preset")) {
        const auto fields = graph_field_preset(v.text("preset", ""));
        g.vertex_count = 4;
        g.local_fields.assign(fields.begin(), fields.end());
        if (v.has("n") && v.integer("n", 4) != 4) throw UsageError("--preset graphs have 4 vertices");
      } else {
        throw UsageError("--edges requires --preset to supply the vertex fields");
      }
      if (v.has("edges")) g.edges = parse_edges(v.text("edges", ""));
    } else {
      const int n = static_cast<int>(v.integer("n", 4));
      const double pe = v.number("pe", 0.4);
      const auto seed = static_cast<std::uint64_t>(v.integer("seed", 0));
      g = generate_er_instance(n, pe, seed);
      m.row_template.p_e = pe;
      m.row_template.instance_seed = seed;
    }
    m.spec = build_graph_ising(g);
  } else if (model == "file") {
    if (experiment_context) throw UsageError("--model file is not available for experiments");
    m.spec = load_hamiltonian(v.require("hamiltonian"));
  } else {
    throw UsageError("--model must be tfim, graph or file, got '" + model + "'");
  }
  return m;
}

ProtocolConfig build_config(const Values& v, const HamiltonianSpec& spec, int default_ncycle) {
  ProtocolConfig cfg;
  cfg.g = v.number("g", 0.005);
  cfg.n_trotter = static_cast<int>(v.integer("nt", 5000));
  cfg.n_cycle = static_cast<int>(v.integer("ncycle", default_ncycle));
  cfg.omega_m = v.has("omega-m") ? v.number("omega-m", 0.0) : spectral_width(spec);
  cfg.ancilla_map = one_to_one_ancillas(spec.qubit_count);
  cfg.beta = 0.0;
  try {
    cfg.validate(spec.qubit_count);
  } catch (const InvalidConfig& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void check_cap(const Values& v, const HamiltonianSpec& spec, const ProtocolConfig& cfg) {
  const long long cap = v.integer("qubit-cap", 12);
  if (spec.qubit_count + cfg.ancilla_count() > cap) {
    throw UsageError("N_s + M = " + std::to_string(spec.qubit_count + cfg.ancilla_count()) +
                     " exceeds --qubit-cap " + std::to_string(cap));
  }
}

HierarchyReport report_hierarchy(const Values& v, const HamiltonianSpec& spec, const ProtocolConfig& cfg,
                                 const RunConfig& rc, std::ostream& log) {
  const HierarchyReport report = validate_hierarchy(cfg, spectral_norm(spec), v.number("threshold", 10.0));
  if (rc.verbosity >= 1) log << report.describe();
  return report;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open output file " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void run_validate(const Values& v, const RunConfig& rc, std::ostream& out, std::ostream& log) {
  const Model model = build_model(v, false);
  const ProtocolConfig cfg = build_config(v, model.spec, 500);
  const HierarchyReport report = report_hierarchy(v, model.spec, cfg, rc, log);
  const double hs_norm = spectral_norm(model.spec);
  const double hi_norm = cfg.g * cfg.ancilla_count();
  const double hb_norm = 0.5 * cfg.omega_m * cfg.ancilla_count();
  const double lambda = std::max({hs_norm, hi_norm, hb_norm});
  const double epsilon = v.number("epsilon", 0.01);
  const std::uint64_t steps = suggest_trotter_steps(cfg.period_time(), lambda, epsilon);

  Sink sink(rc.out, out);
  auto& os = sink.stream();
  const std::vector<std::pair<std::string, std::string>> fields{
      {"hamiltonian", model.spec.label},
      {"n_s", std::to_string(model.spec.qubit_count)},
      {"ancillas", std::to_string(cfg.ancilla_count())},
      {"g", format_double(cfg.g)},
      {"omega_m", format_double(cfg.omega_m)},
      {"t_g", format_double(cfg.period_time())},
      {"t_cycle", format_double(cfg.cycle_time())},
      {"h_s_norm", format_double(hs_norm)},
      {"lambda", format_double(lambda)},
      {"max_drive_rate", format_double(report.max_drive_rate)},
      {"drive_ratio", format_double(report.drive_ratio)},
      {"coupling_ratio", format_double(report.coupling_ratio)},
      {"threshold", format_double(report.threshold)},
      {"drive_ok", report.drive_ok ? "true" : "false"},
      {"coupling_ok", report.coupling_ok ? "true" : "false"},
      {"epsilon", format_double(epsilon)},
      {"suggested_n_trotter", std::to_string(steps)},
      {"n_trotter", std::to_string(cfg.n_trotter)},
  };
  if (rc.format == OutputFormat::Csv) {
    os << "key,value\n";
    for (const auto& [k, val] : fields) os << k << ',' << val << '\n';
  } else {
    os << "{\n";
    for (std::size_t i = 0; i < fields.size(); ++i) {
      os << "  \"" << fields[i].first << "\": \"" << fields[i].second << '"' << (i + 1 < fields.size() ? "," : "")
         << '\n';
    }
    os << "}\n";
  }
  if (!os) throw IoError("failed to write validation report");
}

void run_thermalize(const Values& v, const RunConfig& rc, std::ostream& out, std::ostream& log) {
  const auto betas = v.numbers("beta", {});
  if (betas.empty()) v.require("beta");
  const Model model = build_model(v, false);
  const ProtocolConfig cfg = build_config(v, model.spec, 500);
  check_cap(v, model.spec, cfg);
  report_hierarchy(v, model.spec, cfg, rc, log);
  ResultRow t = model.row_template;
  t.experiment = "thermalize";
  const auto rows = thermalize(model.spec, cfg, betas, t, StateMode::SteadyState, 0, 0, rc.workers);
  Sink sink(rc.out, out);
  emit_results(rows, rc.format, sink.stream(), rc.timing);
  for (const auto& r : rows)
    if (!r.error.empty()) throw Error("RuntimeError", r.error);
}

void run_sample(const Values& v, const RunConfig& rc, std::ostream& out, std::ostream& log) {
  const auto betas = v.numbers("beta", {});
  if (betas.empty()) v.require("beta");
  if (betas.size() != 1) throw UsageError("sample takes a single --beta");
  const Model model = build_model(v, false);
  ProtocolConfig cfg = build_config(v, model.spec, 500);
  cfg.beta = betas.front();
  check_cap(v, model.spec, cfg);
  report_hierarchy(v, model.spec, cfg, rc, log);
  const long long shots = v.integer("shots", 1000);
  const long long burnin = v.integer("burnin", 10);
  if (shots < 1) throw UsageError("--shots must be >= 1");
  if (burnin < 0) throw UsageError("--burnin must be >= 0");
  const auto samples = sample_gibbs(model.spec, cfg, static_cast<std::uint64_t>(burnin),
                                    static_cast<std::uint64_t>(shots),
                                    static_cast<std::uint64_t>(v.integer("seed", 0)), rc.workers);
  Sink sink(rc.out, out);
  emit_samples(samples, rc.format, sink.stream());
}

void run_experiment_command(const Values& v, const RunConfig& rc, std::ostream& out, std::ostream& log) {
  const ExperimentKind kind = *rc.experiment;
  if (v.has("model") && v.text("model", "") != (kind == ExperimentKind::GraphSampling ? "graph" : "tfim")) {
    throw UsageError("--model conflicts with the experiment kind");
  }
  ExperimentPlan plan;
  plan.kind = kind;
  plan.betas = v.numbers("beta", {});
  if (plan.betas.empty()) v.require("beta");
  plan.coupling = v.number("jj", 1.0);
  plan.g = v.number("g", 0.005);
  plan.n_trotter = static_cast<int>(v.integer("nt", 5000));
  plan.n_cycle = static_cast<int>(v.integer("ncycle", kind == ExperimentKind::GraphSampling ? 100 : 500));
  if (v.has("omega-m")) plan.omega_m = v.number("omega-m", 0.0);
  plan.seed = static_cast<std::uint64_t>(v.integer("seed", 0));
  plan.qubit_cap = static_cast<int>(v.integer("qubit-cap", 12));
  plan.workers = rc.workers;
  plan.output_path = rc.out;
  plan.instances = static_cast<int>(v.integer("instances", 1));
  const std::string mode = v.text("mode", "steady");
  if (mode == "steady") {
    plan.mode = StateMode::SteadyState;
  } else if (mode == "repeated") {
    plan.mode = StateMode::RepeatedApplication;
    plan.sweeps = static_cast<int>(v.integer("sweeps", 0));
  } else {
    throw UsageError("--mode must be steady or repeated");
  }
  if (kind == ExperimentKind::GraphSampling) {
    if (v.has("hj")) throw UsageError("--hj does not apply to graph experiments");
    plan.sizes = v.integers("n", {4});
    plan.edge_probabilities = v.numbers("pe", {0.4});
    if (v.has("preset") || v.has("edges")) {
      if (v.has("pe")) throw UsageError("--pe conflicts with --preset/--edges");
      GraphInstance g;
      const auto fields = graph_field_preset(v.require("preset"));
      g.vertex_count = 4;
      g.local_fields.assign(fields.begin(), fields.end());
      if (v.has("edges")) g.edges = parse_edges(v.text("edges", ""));
      plan.graph = g;
    }
  } else {
    if (v.has("pe") || v.has("edges") || v.has("preset")) {
      throw UsageError("--pe/--edges/--preset apply only to graph experiments");
    }
    plan.sizes = v.integers("n", {2});
    plan.field_ratios = v.numbers("hj", {1.0});
  }
  try {
    plan.validate();
  } catch (const InvalidConfig& e) {
    throw UsageError(e.what());
  }

  if (rc.verbosity >= 1) {
    // Report the hierarchy for the first model of the sweep.
    HamiltonianSpec spec = kind == ExperimentKind::GraphSampling
                               ? build_graph_ising(plan.graph ? *plan.graph
                                                              : generate_er_instance(plan.sizes.front(),
                                                                                     plan.edge_probabilities.front(),
                                                                                     plan.seed))
                               : build_tfim(plan.sizes.front(), plan.coupling, plan.field_ratios.front() * plan.coupling);
    ProtocolConfig cfg;
    cfg.g = plan.g;
    cfg.n_trotter = plan.n_trotter;
    cfg.n_cycle = plan.n_cycle;
    cfg.omega_m = plan.omega_m ? *plan.omega_m : spectral_width(spec);
    report_hierarchy(v, spec, cfg, rc, log);
  }

  const auto rows = run_experiment(plan);
  Sink sink(rc.out, out);
  emit_results(rows, rc.format, sink.stream(), rc.timing);
  if (rc.verbosity >= 1) {
    const auto failed = std::count_if(rows.begin(), rows.end(), [](const ResultRow& r) { return !r.error.empty(); });
    if (failed > 0) log << failed << " of " << rows.size() << " sweep points failed; see the error column\n";
  }
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  std::map<std::string, std::string> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(path + ":" + std::to_string(line_no) + ": expected `key = value`");
    }
    std::string key(trim(view.substr(0, eq)));
    std::string value(trim(view.substr(eq + 1)));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (key.empty()) throw UsageError(path + ":" + std::to_string(line_no) + ": empty key");
    values[key] = value;
  }
  return values;
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& help_out) {
  CLI::App app{"Digital dissipative-dynamics QMCMC simulator"};
  app.require_subcommand(1, 1);

  std::map<std::string, std::string> flags;
  std::string config_path;
  std::string experiment_kind;
  bool verbose = false;
  bool quiet = false;
  bool timing = false;

  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs{
      {Command::Thermalize, app.add_subcommand("thermalize", "steady state and metrics for one model")},
      {Command::Sample, app.add_subcommand("sample", "shot-based trajectory sampling")},
      {Command::Experiment, app.add_subcommand("experiment", "parameter sweeps: tfim | magnetization | graph")},
      {Command::Validate, app.add_subcommand("validate", "parameter hierarchy and Trotter-step pre-flight check")},
  };
  for (auto& sub : subs) {
    auto* a = sub.app;
    for (const auto& key : allowed_keys(sub.command)) {
      const char* help = "";
      for (const auto& k : kModelKeys) if (key == k.name) help = k.help;
      for (const auto& k : kOutputKeys) if (key == k.name) help = k.help;
      for (const auto& k : kSampleKeys) if (key == k.name) help = k.help;
      for (const auto& k : kExperimentKeys) if (key == k.name) help = k.help;
      for (const auto& k : kValidateKeys) if (key == k.name) help = k.help;
      a->add_option("--" + key, flags[key], help);
    }
    a->add_option("--config", config_path, "key = value config file; flags override");
    auto* v = a->add_flag("-v,--verbose", verbose, "verbose logging");
    auto* q = a->add_flag("-q,--quiet", quiet, "suppress the hierarchy report");
    v->excludes(q);
    a->add_flag("--timing", timing, "include the wall_time column");
    if (sub.command == Command::Experiment) {
      a->add_option("kind", experiment_kind, "tfim | magnetization | graph")
          ->required()
          ->check(CLI::IsMember({"tfim", "magnetization", "graph"}));
    }
    auto* ham = a->get_option("--hamiltonian");
    for (const char* other : {"--hj", "--pe", "--edges", "--preset"}) ham->excludes(a->get_option(other));
    a->get_option("--edges")->excludes(a->get_option("--pe"));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    help_out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    help_out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ExtrasError& e) {
    throw UnknownKey(e.what());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig rc;
  const Sub* chosen = nullptr;
  for (const auto& sub : subs)
    if (sub.app->parsed()) chosen = &sub;
  if (!chosen) throw UsageError("a command is required");
  rc.command = chosen->command;
  if (rc.command == Command::Experiment) {
    rc.experiment = experiment_kind == "tfim"            ? ExperimentKind::TfimInfidelity
                    : experiment_kind == "magnetization" ? ExperimentKind::MagnetizationSweep
                                                         : ExperimentKind::GraphSampling;
  }

  const auto allowed = allowed_keys(rc.command);
  rc.config_path = config_path;
  if (!config_path.empty()) {
    for (auto& [key, value] : read_config_file(config_path)) {
      if (!allowed.count(key)) throw UnknownKey("config key '" + key + "' is not valid for this command");
      rc.values[key] = value;
    }
  }
  for (const auto& key : allowed) {
    if (chosen->app->get_option("--" + key)->count() > 0) rc.values[key] = flags[key];
  }

  rc.verbosity = quiet ? 0 : (verbose ? 2 : 1);
  rc.timing = timing;
  const Values v(rc.values);
  const std::string format = v.text("format", "csv");
  if (format == "csv") rc.format = OutputFormat::Csv;
  else if (format == "json") rc.format = OutputFormat::Json;
  else throw UsageError("--format must be csv or json");
  rc.out = v.text("out", "");
  rc.workers = static_cast<int>(v.integer("workers", 0));
  if (rc.workers < 0) throw UsageError("--workers must be >= 0");
  if (rc.workers == 0) rc.workers = default_workers();
  return rc;
}

void execute(const RunConfig& config, std::ostream& out, std::ostream& log) {
  const Values v(config.values);
  switch (config.command) {
    case Command::Validate: run_validate(v, config, out, log); break;
    case Command::Thermalize: run_thermalize(v, config, out, log); break;
    case Command::Sample: run_sample(v, config, out, log); break;
    case Command::Experiment: run_experiment_command(v, config, out, log); break;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  static const std::set<std::string> usage_kinds{"UsageError", "UnknownKey", "InvalidConfig", "ParseError",
                                                 "InvalidTolerance"};
  try {
    const auto config = parse_args(args, out);
    if (config) execute(*config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage_kinds.count(e.kind()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace qmcmc
