// Command-line front end: configure, run and export rivalry simulations,
// parameter sweeps and the Levelt proposition suite.
//
// Exit codes: 0 success, 2 usage/config error, 3 numerical failure,
// 4 inconclusive science verdict.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rivalry/csv.hpp"
#include "rivalry/serialize.hpp"

namespace fs = std::filesystem;
using namespace rivalry;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInconclusive = 4;

struct ConfigFile {
  json model;
  json stim;
  json sim;
  json analysis;
  json sweep;
};

ConfigFile load_config(const std::string& path) {
  ConfigFile cfg;
  if (path.empty()) return cfg;
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "model")
      cfg.model = value;
    else if (key == "stim")
      cfg.stim = value;
    else if (key == "sim")
      cfg.sim = value;
    else if (key == "analysis")
      cfg.analysis = value;
    else if (key == "sweep")
      cfg.sweep = value;
    else
      throw ConfigError("config file: unknown key '" + key + "'");
  }
  return cfg;
}

ModelKind parse_model_name(const std::string& name) {
  const auto kind = model_kind_from_name(name);
  if (!kind)
    throw ConfigError(
        "unknown model '" + name +
        "' (expected wilson, laing-chow, lc-adaptation, lc-depression or "
        "kalarickal)");
  return *kind;
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError("expected name=value, got '" + text + "'");
  try {
    std::size_t used = 0;
    const double v = std::stod(text.substr(eq + 1), &used);
    if (used != text.size() - eq - 1) throw std::invalid_argument(text);
    return {text.substr(0, eq), v};
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value in '" + text + "'");
  }
}

Stimulus parse_stim(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("expected --stim s1,s2; got '" + text + "'");
  try {
    Stimulus s{std::stod(text.substr(0, comma)),
               std::stod(text.substr(comma + 1))};
    s.validate();
    return s;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad stimulus '" + text + "'");
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  for (;;) {
    const auto colon = text.find(':', pos);
    const std::string field = colon == std::string::npos
                                  ? text.substr(pos)
                                  : text.substr(pos, colon - pos);
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(field, &used));
      if (used != field.size()) throw std::invalid_argument(field);
    } catch (const std::exception&) {
      throw ConfigError("bad grid '" + text + "' (expected lo:hi:step)");
    }
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3)
    throw ConfigError("bad grid '" + text + "' (expected lo:hi:step)");
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(step > 0.0) || hi < lo)
    throw ConfigError("bad grid '" + text + "': need hi >= lo and step > 0");
  std::vector<double> grid;
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i)
    grid.push_back(lo + step * static_cast<double>(i));
  return grid;
}

Scheme parse_scheme(const std::string& name) {
  if (name == "rk4") return Scheme::Rk4;
  if (name == "euler") return Scheme::Euler;
  throw ConfigError("unknown scheme '" + name + "' (rk4 or euler)");
}

InitPreset parse_preset(const std::string& name) {
  if (name == "perturbed") return InitPreset::Perturbed;
  if (name == "symmetric-zero" || name == "symmetric_zero")
    return InitPreset::SymmetricZero;
  throw ConfigError("unknown initial state '" + name +
                    "' (perturbed or symmetric-zero)");
}

int env_jobs() {
  if (const char* env = std::getenv("RIVALRY_JOBS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  os << content;
}

// Flag values shared by the subcommands.
struct CommonFlags {
  std::string config_path;
  std::string model_name;
  std::vector<std::string> params;
  std::string stim;
  double dt = 0.0;
  double duration = 0.0;
  std::int64_t record_every = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string scheme;
  std::string init;
  std::string out_dir = ".";
  double transient = -1.0;
  double delta = -1.0;
  double eps_fusion = -1.0;
  int min_switches = -1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_sim_flags) {
  cmd->add_option("--config", f.config_path,
                  "JSON config file; explicit flags win");
  cmd->add_option("--model", f.model_name,
                  "wilson | laing-chow | lc-adaptation | lc-depression | "
                  "kalarickal");
  cmd->add_option("--param", f.params, "model parameter override, name=value");
  cmd->add_option("--out", f.out_dir, "output directory")
      ->capture_default_str();
  if (with_sim_flags) {
    cmd->add_option("--stim", f.stim, "stimulus strengths s1,s2");
    cmd->add_option("--dt", f.dt, "step size (ms)");
    cmd->add_option("--dur", f.duration, "simulated duration (ms)");
    cmd->add_option("--record-every", f.record_every,
                    "sampling stride in steps");
    cmd->add_option("--scheme", f.scheme, "rk4 | euler");
    cmd->add_option("--init", f.init, "perturbed | symmetric-zero");
  }
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&f](const std::uint64_t& v) {
        f.seed = v;
        f.seed_set = true;
      },
      "base random seed");
  cmd->add_option("--transient", f.transient, "analysis transient cut (ms)");
  cmd->add_option("--delta", f.delta, "dominance margin");
  cmd->add_option("--eps-fusion", f.eps_fusion, "equal-activity margin");
  cmd->add_option("--min-switches", f.min_switches,
                  "rivalry switch threshold");
}

ModelInstance resolve_model(const CommonFlags& f, const ConfigFile& cfg) {
  ModelInstance model;
  if (!f.model_name.empty()) {
    model = default_params(parse_model_name(f.model_name));
    if (!cfg.model.is_null()) {
      const ModelInstance from_cfg = model_from_json(cfg.model);
      if (from_cfg.kind() == model.kind()) model = from_cfg;
    }
  } else if (!cfg.model.is_null()) {
    model = model_from_json(cfg.model);
  } else {
    throw ConfigError("no model given (use --model or a config file)");
  }
  for (const std::string& assignment : f.params) {
    const auto [name, value] = parse_assignment(assignment);
    set_param(model, name, value);
  }
  model.validate();
  return model;
}

SimConfig resolve_sim(const CommonFlags& f, const ConfigFile& cfg,
                      ModelKind kind) {
  SimConfig sim = sim_config_from_json(
      cfg.sim.is_null() ? json::object() : cfg.sim, default_sim_config(kind));
  if (f.dt > 0.0) sim.dt = f.dt;
  if (f.duration > 0.0) sim.duration = f.duration;
  if (f.record_every > 0) sim.record_every = f.record_every;
  if (f.seed_set) sim.seed = f.seed;
  if (!f.scheme.empty()) sim.scheme = parse_scheme(f.scheme);
  if (!f.init.empty()) sim.initial_state = parse_preset(f.init);
  return sim;
}

AnalysisConfig resolve_analysis_flags(const CommonFlags& f,
                                      const ConfigFile& cfg) {
  AnalysisConfig a = analysis_config_from_json(
      cfg.analysis.is_null() ? json::object() : cfg.analysis,
      AnalysisConfig{});
  if (f.transient >= 0.0) a.t_transient = f.transient;
  if (f.delta >= 0.0) a.delta = f.delta;
  if (f.eps_fusion >= 0.0) a.epsilon_fusion = f.eps_fusion;
  if (f.min_switches >= 0) a.min_switches_rivalry = f.min_switches;
  return a;
}

Stimulus resolve_stim(const CommonFlags& f, const ConfigFile& cfg) {
  Stimulus stim;
  if (!cfg.stim.is_null()) stim = stimulus_from_json(cfg.stim);
  if (!f.stim.empty()) stim = parse_stim(f.stim);
  return stim;
}

// ---------------------------------------------------------------------------

int cmd_simulate(const CommonFlags& f, bool with_intervals) {
  const ConfigFile cfg = load_config(f.config_path);
  const ModelInstance model = resolve_model(f, cfg);
  const Stimulus stim = resolve_stim(f, cfg);
  const SimConfig sim = resolve_sim(f, cfg, model.kind());
  const AnalysisConfig analysis_cfg = resolve_analysis_flags(f, cfg);

  const Trajectory traj = simulate(model, stim, sim);
  const DominanceReport report = analyze(traj, analysis_cfg);

  fs::create_directories(f.out_dir);
  write_file(fs::path(f.out_dir) / "trajectory.csv", trajectory_csv(traj));
  write_file(fs::path(f.out_dir) / "trajectory.meta.json",
             trajectory_metadata(traj).dump(2) + "\n");
  if (with_intervals) {
    std::ostringstream os;
    write_intervals_csv(report.intervals, os);
    write_file(fs::path(f.out_dir) / "intervals.csv", os.str());
  }

  json out = report_to_json(report);
  const ActivityChannels ch = activity_channels(model.kind());
  out["analysis"] = resolved_analysis_to_json(
      resolve_analysis(analysis_cfg, sim.duration, ch.scale));
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_sweep(const CommonFlags& f, const std::string& axis_flag,
              const std::string& grid_flag,
              const std::vector<std::string>& fixed_flags, int replicates,
              int jobs) {
  const ConfigFile cfg = load_config(f.config_path);

  SweepSpec spec;
  if (!cfg.sweep.is_null()) {
    json sweep_json = cfg.sweep;
    if (!cfg.model.is_null() && !sweep_json.contains("model"))
      sweep_json["model"] = cfg.model;
    if (!cfg.sim.is_null() && !sweep_json.contains("sim"))
      sweep_json["sim"] = cfg.sim;
    if (!cfg.analysis.is_null() && !sweep_json.contains("analysis"))
      sweep_json["analysis"] = cfg.analysis;
    spec = sweep_spec_from_json(sweep_json);
    if (!f.model_name.empty() || !f.params.empty())
      spec.model = resolve_model(f, cfg);
  } else {
    spec.model = resolve_model(f, cfg);
    spec.sim = default_sim_config(spec.model.kind());
  }
  if (!axis_flag.empty()) {
    std::string name = axis_flag;
    if (name == "equal") name = "equal_stimulus";
    if (name == "cross-inhibition") name = "cross_inhibition";
    if (name == "asymmetric") name = "asymmetric_s1";
    const auto axis = sweep_axis_from_name(name);
    if (!axis) throw ConfigError("unknown axis '" + axis_flag + "'");
    spec.axis = *axis;
  }
  if (!grid_flag.empty()) spec.grid = parse_grid(grid_flag);
  for (const std::string& assignment : fixed_flags) {
    const auto [name, value] = parse_assignment(assignment);
    spec.fixed[name] = value;
  }
  if (replicates > 0) spec.replicates = replicates;

  // Flag overrides apply on top of whatever the spec carries so far.
  if (f.dt > 0.0) spec.sim.dt = f.dt;
  if (f.duration > 0.0) spec.sim.duration = f.duration;
  if (f.record_every > 0) spec.sim.record_every = f.record_every;
  if (f.seed_set) spec.sim.seed = f.seed;
  if (!f.scheme.empty()) spec.sim.scheme = parse_scheme(f.scheme);
  if (!f.init.empty()) spec.sim.initial_state = parse_preset(f.init);
  if (f.transient >= 0.0) spec.analysis.t_transient = f.transient;
  if (f.delta >= 0.0) spec.analysis.delta = f.delta;
  if (f.eps_fusion >= 0.0) spec.analysis.epsilon_fusion = f.eps_fusion;
  if (f.min_switches >= 0) spec.analysis.min_switches_rivalry = f.min_switches;

  if (spec.grid.empty())
    throw ConfigError("sweep grid is empty (use --grid lo:hi:step)");

  const SweepResult result = run_sweep(spec, jobs);

  fs::create_directories(f.out_dir);
  write_file(fs::path(f.out_dir) / "sweep.csv", sweep_csv(result));
  write_file(fs::path(f.out_dir) / "sweep.json",
             sweep_result_to_json(result).dump(2) + "\n");

  json bands = json::array();
  for (const RegimeBand& band : find_regime_bands(result))
    bands.push_back(json{{"regime", regime_to_json(band.regime)},
                         {"param_lo", band.param_lo},
                         {"param_hi", band.param_hi},
                         {"rows", band.row_count()}});
  std::cout << json{{"rows", result.rows.size()}, {"bands", bands}}.dump(2)
            << '\n';
  return 0;
}

int cmd_levelt(const CommonFlags& f, int jobs) {
  if (f.model_name.empty()) throw ConfigError("levelt needs --model");
  const ModelKind kind = parse_model_name(f.model_name);

  LeveltOptions opts;
  opts.seed = f.seed_set ? f.seed : 0;
  opts.jobs = jobs;
  const LeveltReport report = run_levelt(kind, opts);

  const json full = levelt_report_to_json(report);
  if (f.out_dir != ".") {
    fs::create_directories(f.out_dir);
    write_file(fs::path(f.out_dir) / "levelt.json", full.dump(2) + "\n");
  }
  json summary = full;
  summary.erase("sweeps");
  std::cout << summary.dump(2) << '\n';

  std::vector<std::string> inconclusive;
  for (const auto& [name, verdict] :
       std::initializer_list<std::pair<const char*, Verdict>>{
           {"prop1", report.prop1.verdict},
           {"prop2_modified", report.prop2_modified.verdict},
           {"prop3_modified", report.prop3_modified.verdict},
           {"prop4_modified", report.prop4_modified.verdict}}) {
    if (verdict == Verdict::Inconclusive) inconclusive.emplace_back(name);
  }
  if (!inconclusive.empty()) {
    std::cerr << "inconclusive verdicts (too few rivalry rows):";
    for (const auto& name : inconclusive) std::cerr << ' ' << name;
    std::cerr << '\n';
    return kExitInconclusive;
  }
  const auto failures = check_levelt_expectation(report);
  if (!failures.empty()) {
    for (const auto& msg : failures)
      std::cerr << "expectation not met: " << msg << '\n';
    return 1;
  }
  return 0;
}

int cmd_classify(const std::string& in_path, const CommonFlags& f) {
  const ConfigFile cfg = load_config(f.config_path);
  const CsvTrajectory table = read_trajectory_csv_file(in_path);
  const ActivityTrace trace =
      activity_trace(table.labels, table.t, table.columns);
  const double span = trace.t.back() - trace.t.front();
  const ResolvedAnalysisConfig resolved =
      resolve_analysis(resolve_analysis_flags(f, cfg), span, trace.scale);
  const DominanceReport report = analyze(trace, resolved);

  json out = report_to_json(report);
  out["analysis"] = resolved_analysis_to_json(resolved);
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulation and analysis toolkit for binocular-rivalry competition "
      "models"};
  app.require_subcommand(1);

  CommonFlags sim_flags;
  bool sim_intervals = false;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "run one model and report dominance");
  add_common_flags(simulate_cmd, sim_flags, true);
  simulate_cmd->add_flag("--intervals", sim_intervals,
                         "also write intervals.csv");

  CommonFlags sweep_flags;
  std::string axis;
  std::string grid;
  std::vector<std::string> fixed;
  int replicates = 0;
  int sweep_jobs = env_jobs();
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "sweep a parameter over a grid");
  add_common_flags(sweep_cmd, sweep_flags, true);
  sweep_cmd->add_option("--axis", axis, "equal | cross-inhibition | asymmetric");
  sweep_cmd->add_option("--grid", grid, "lo:hi:step (inclusive)");
  sweep_cmd->add_option("--fixed", fixed,
                        "held-constant value, e.g. s2=0.5 (repeatable)");
  sweep_cmd->add_option("--replicates", replicates, "seeds per grid point");
  sweep_cmd->add_option("--jobs", sweep_jobs,
                        "worker threads (default RIVALRY_JOBS or 1)");

  CommonFlags levelt_flags;
  int levelt_jobs = env_jobs();
  CLI::App* levelt_cmd = app.add_subcommand(
      "levelt", "run the default sweeps and test the Levelt propositions");
  add_common_flags(levelt_cmd, levelt_flags, false);
  levelt_cmd->add_option("--jobs", levelt_jobs,
                         "worker threads (default RIVALRY_JOBS or 1)");

  CommonFlags classify_flags;
  std::string in_path;
  CLI::App* classify_cmd = app.add_subcommand(
      "classify", "re-analyze a trajectory CSV and print its report");
  add_common_flags(classify_cmd, classify_flags, false);
  classify_cmd->add_option("--in", in_path, "trajectory CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate_cmd->parsed()) return cmd_simulate(sim_flags, sim_intervals);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_flags, axis, grid, fixed, replicates, sweep_jobs);
    if (levelt_cmd->parsed()) return cmd_levelt(levelt_flags, levelt_jobs);
    if (classify_cmd->parsed()) return cmd_classify(in_path, classify_flags);
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InconclusiveError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const BandSelectionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return 0;
}
