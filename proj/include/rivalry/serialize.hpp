#pragma once

#include <json.hpp>

#include "rivalry/analysis.hpp"
#include "rivalry/experiments.hpp"
#include "rivalry/integrator.hpp"

namespace rivalry {

using json = nlohmann::json;

// Parameter records serialize with keys exactly matching their field names;
// this doubles as the config-file schema the CLI consumes. Parsers start from
// the model's defaults, apply the keys present, and reject unknown keys.

json model_to_json(const ModelInstance& m);
ModelInstance model_from_json(const json& j);

json stimulus_to_json(Stimulus s);
Stimulus stimulus_from_json(const json& j);

json sim_config_to_json(const SimConfig& c);
// Overlays onto `base` (typically default_sim_config for the model kind).
SimConfig sim_config_from_json(const json& j, SimConfig base);

json analysis_config_to_json(const AnalysisConfig& c);
AnalysisConfig analysis_config_from_json(const json& j, AnalysisConfig base);
json resolved_analysis_to_json(const ResolvedAnalysisConfig& c);

json regime_to_json(const Regime& r);
json report_to_json(const DominanceReport& r);

// Sidecar carrying everything needed to reproduce a trajectory file.
json trajectory_metadata(const Trajectory& traj);

json sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const json& j);
json sweep_result_to_json(const SweepResult& result);

json levelt_report_to_json(const LeveltReport& report);

}  // namespace rivalry
