#include "rivalry/serialize.hpp"

#include <sstream>

namespace rivalry {

namespace {

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (key == k) ok = true;
    if (!ok) {
      std::ostringstream os;
      os << what << ": unknown key '" << key << "'";
      throw ConfigError(os.str());
    }
  }
}

const char* preset_name(InitPreset p) {
  return p == InitPreset::SymmetricZero ? "symmetric_zero" : "perturbed";
}

InitPreset preset_from_name(const std::string& name) {
  if (name == "symmetric_zero") return InitPreset::SymmetricZero;
  if (name == "perturbed") return InitPreset::Perturbed;
  throw ConfigError("unknown initial-state preset '" + name + "'");
}

const char* scheme_name(Scheme s) {
  return s == Scheme::Rk4 ? "rk4" : "euler";
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "rk4") return Scheme::Rk4;
  if (name == "euler") return Scheme::Euler;
  throw ConfigError("unknown scheme '" + name + "'");
}

}  // namespace

json model_to_json(const ModelInstance& m) {
  json params = json::object();
  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        for (const auto& f : param_fields<P>) params[f.name] = p.*(f.member);
      },
      m.params);
  json j{{"kind", model_name(m.kind())}, {"params", params}};
  if (!m.metadata.empty()) j["metadata"] = m.metadata;
  return j;
}

ModelInstance model_from_json(const json& j) {
  reject_unknown_keys(j, {"kind", "params", "metadata"}, "model");
  if (!j.contains("kind")) throw ConfigError("model: missing 'kind'");
  const auto kind = model_kind_from_name(j.at("kind").get<std::string>());
  if (!kind)
    throw ConfigError("model: unknown kind '" +
                      j.at("kind").get<std::string>() + "'");
  ModelInstance m = default_params(*kind);
  if (j.contains("params")) {
    for (const auto& [key, value] : j.at("params").items()) {
      if (!value.is_number())
        throw ConfigError("model parameter '" + key + "' must be a number");
      set_param(m, key, value.get<double>());
    }
  }
  if (j.contains("metadata"))
    m.metadata = j.at("metadata").get<std::map<std::string, bool>>();
  m.validate();
  return m;
}

json stimulus_to_json(Stimulus s) { return json{{"s1", s.s1}, {"s2", s.s2}}; }

Stimulus stimulus_from_json(const json& j) {
  reject_unknown_keys(j, {"s1", "s2"}, "stim");
  Stimulus s;
  s.s1 = j.value("s1", 0.0);
  s.s2 = j.value("s2", 0.0);
  s.validate();
  return s;
}

json sim_config_to_json(const SimConfig& c) {
  json init;
  if (const auto* preset = std::get_if<InitPreset>(&c.initial_state)) {
    init = json{{"preset", preset_name(*preset)}};
  } else {
    const auto& sv = std::get<StateVector>(c.initial_state);
    init = json{{"values", std::vector<double>(sv.begin(), sv.end())}};
  }
  return json{{"dt", c.dt},
              {"duration", c.duration},
              {"record_every", c.record_every},
              {"seed", c.seed},
              {"scheme", scheme_name(c.scheme)},
              {"initial_state", init}};
}

SimConfig sim_config_from_json(const json& j, SimConfig base) {
  reject_unknown_keys(
      j, {"dt", "duration", "record_every", "seed", "scheme", "initial_state"},
      "sim");
  if (j.contains("dt")) base.dt = j.at("dt").get<double>();
  if (j.contains("duration")) base.duration = j.at("duration").get<double>();
  if (j.contains("record_every"))
    base.record_every = j.at("record_every").get<std::int64_t>();
  if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("scheme"))
    base.scheme = scheme_from_name(j.at("scheme").get<std::string>());
  if (j.contains("initial_state")) {
    const json& init = j.at("initial_state");
    reject_unknown_keys(init, {"preset", "values"}, "initial_state");
    if (init.contains("preset")) {
      base.initial_state =
          preset_from_name(init.at("preset").get<std::string>());
    } else if (init.contains("values")) {
      const auto values = init.at("values").get<std::vector<double>>();
      StateVector sv = StateVector::zeros(values.size());
      for (std::size_t i = 0; i < values.size(); ++i) sv[i] = values[i];
      base.initial_state = sv;
    } else {
      throw ConfigError("initial_state needs 'preset' or 'values'");
    }
  }
  return base;
}

json analysis_config_to_json(const AnalysisConfig& c) {
  json j = json::object();
  if (c.t_transient) j["t_transient"] = *c.t_transient;
  if (c.delta) j["delta"] = *c.delta;
  if (c.epsilon_fusion) j["epsilon_fusion"] = *c.epsilon_fusion;
  j["min_switches_rivalry"] = c.min_switches_rivalry;
  return j;
}

AnalysisConfig analysis_config_from_json(const json& j, AnalysisConfig base) {
  reject_unknown_keys(
      j, {"t_transient", "delta", "epsilon_fusion", "min_switches_rivalry"},
      "analysis");
  if (j.contains("t_transient"))
    base.t_transient = j.at("t_transient").get<double>();
  if (j.contains("delta")) base.delta = j.at("delta").get<double>();
  if (j.contains("epsilon_fusion"))
    base.epsilon_fusion = j.at("epsilon_fusion").get<double>();
  if (j.contains("min_switches_rivalry"))
    base.min_switches_rivalry = j.at("min_switches_rivalry").get<int>();
  return base;
}

json resolved_analysis_to_json(const ResolvedAnalysisConfig& c) {
  return json{{"t_transient", c.t_transient},
              {"delta", c.delta},
              {"epsilon_fusion", c.epsilon_fusion},
              {"min_switches_rivalry", c.min_switches_rivalry}};
}

json regime_to_json(const Regime& r) {
  json j{{"kind", regime_kind_name(r.kind)}};
  if (r.kind == RegimeKind::WinnerTakeAll) j["winner"] = r.winner;
  return j;
}

json report_to_json(const DominanceReport& r) {
  json intervals = json::array();
  for (const DominanceInterval& iv : r.intervals)
    intervals.push_back(json{{"channel", iv.channel},
                             {"start", iv.start},
                             {"end", iv.end},
                             {"complete", iv.complete}});
  json j{{"regime", regime_to_json(r.regime)},
         {"alternation_rate", r.alternation_rate},
         {"predominance_1", r.predominance_1},
         {"predominance_2", r.predominance_2},
         {"window", {r.window.first, r.window.second}},
         {"intervals", intervals}};
  j["mean_duration_1"] =
      r.mean_duration_1 ? json(*r.mean_duration_1) : json(nullptr);
  j["mean_duration_2"] =
      r.mean_duration_2 ? json(*r.mean_duration_2) : json(nullptr);
  return j;
}

json trajectory_metadata(const Trajectory& traj) {
  std::vector<std::string> columns{"t"};
  for (const char* label : state_labels(traj.model.kind()))
    columns.emplace_back(label);
  const StateVector init =
      initial_state_vector(traj.model, traj.config.initial_state);
  return json{{"model", model_to_json(traj.model)},
              {"stim", stimulus_to_json(traj.stim)},
              {"config", sim_config_to_json(traj.config)},
              {"resolved_initial_state",
               std::vector<double>(init.begin(), init.end())},
              {"columns", columns},
              {"samples", traj.times.size()}};
}

json sweep_spec_to_json(const SweepSpec& spec) {
  return json{{"model", model_to_json(spec.model)},
              {"axis", sweep_axis_name(spec.axis)},
              {"grid", spec.grid},
              {"fixed", spec.fixed},
              {"replicates", spec.replicates},
              {"sim", sim_config_to_json(spec.sim)},
              {"analysis", analysis_config_to_json(spec.analysis)}};
}

SweepSpec sweep_spec_from_json(const json& j) {
  reject_unknown_keys(
      j, {"model", "axis", "grid", "fixed", "replicates", "sim", "analysis"},
      "sweep");
  if (!j.contains("model")) throw ConfigError("sweep: missing 'model'");
  SweepSpec spec;
  spec.model = model_from_json(j.at("model"));
  if (j.contains("axis")) {
    const auto axis = sweep_axis_from_name(j.at("axis").get<std::string>());
    if (!axis)
      throw ConfigError("sweep: unknown axis '" +
                        j.at("axis").get<std::string>() + "'");
    spec.axis = *axis;
  }
  if (j.contains("grid")) spec.grid = j.at("grid").get<std::vector<double>>();
  if (j.contains("fixed"))
    spec.fixed = j.at("fixed").get<std::map<std::string, double>>();
  if (j.contains("replicates"))
    spec.replicates = j.at("replicates").get<int>();
  spec.sim = sim_config_from_json(j.value("sim", json::object()),
                                  default_sim_config(spec.model.kind()));
  spec.analysis = analysis_config_from_json(j.value("analysis", json::object()),
                                            AnalysisConfig{});
  return spec;
}

json sweep_result_to_json(const SweepResult& result) {
  json rows = json::array();
  for (const SweepRow& row : result.rows) {
    json reps = json::array();
    for (const ReplicateOutcome& rep : row.replicates) {
      json r{{"seed", rep.seed}};
      if (rep.report)
        r["report"] = report_to_json(*rep.report);
      else
        r["error"] = rep.error;
      reps.push_back(std::move(r));
    }
    const RowAggregate& a = row.aggregate;
    json agg{{"alternation_rate", a.alternation_rate},
             {"predominance_1", a.predominance_1},
             {"predominance_2", a.predominance_2},
             {"reports", a.reports},
             {"regime", regime_to_json(a.regime)}};
    agg["mean_duration_1"] =
        a.mean_duration_1 ? json(*a.mean_duration_1) : json(nullptr);
    agg["mean_duration_2"] =
        a.mean_duration_2 ? json(*a.mean_duration_2) : json(nullptr);
    agg["mean_duration_pooled"] =
        a.mean_duration_pooled ? json(*a.mean_duration_pooled) : json(nullptr);
    rows.push_back(json{{"param", row.param},
                        {"replicates", std::move(reps)},
                        {"aggregate", std::move(agg)}});
  }
  return json{{"spec", sweep_spec_to_json(result.spec)},
              {"rows", std::move(rows)}};
}

namespace {

json proposition_to_json(const PropositionResult& p) {
  return json{{"verdict", verdict_name(p.verdict)},
              {"rho", p.rho},
              {"aux", p.aux},
              {"band", {p.band_lo, p.band_hi}},
              {"note", p.note}};
}

}  // namespace

json levelt_report_to_json(const LeveltReport& report) {
  const Prop4Result& p4 = report.prop4_modified;
  json prop4{{"verdict", verdict_name(p4.verdict)},
             {"high_rho", p4.high_rho},
             {"high_band", {p4.high_lo, p4.high_hi}},
             {"reversal", p4.reversal},
             {"note", p4.note}};
  if (p4.reversal) {
    prop4["reversal_rho"] = p4.reversal_rho;
    prop4["reversal_band"] = {p4.reversal_lo, p4.reversal_hi};
  }
  return json{{"model", model_name(report.model)},
              {"propositions",
               json{{"prop1", proposition_to_json(report.prop1)},
                    {"prop2_modified",
                     proposition_to_json(report.prop2_modified)},
                    {"prop3_modified",
                     proposition_to_json(report.prop3_modified)},
                    {"prop4_modified", prop4}}},
              {"sweeps",
               json{{"equal", sweep_result_to_json(report.equal)},
                    {"cross_inhibition",
                     sweep_result_to_json(report.cross_inhibition)},
                    {"asymmetric", sweep_result_to_json(report.asymmetric)}}}};
}

}  // namespace rivalry
