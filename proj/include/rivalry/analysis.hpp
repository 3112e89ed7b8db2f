#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rivalry/integrator.hpp"

namespace rivalry {

// A maximal stretch of one channel's perceptual dominance. Intervals returned
// by the detector alternate channel and tile the analyzed window from the
// first threshold crossing onward. `complete` is false for the first and last
// (possibly censored) intervals.
struct DominanceInterval {
  int channel = 0;  // 1 or 2
  double start = 0.0;
  double end = 0.0;
  bool complete = false;
};

enum class RegimeKind {
  Rivalry,
  WinnerTakeAll,
  Fusion,
  EqualActivity,
  Undetermined,
};

struct Regime {
  RegimeKind kind = RegimeKind::Undetermined;
  int winner = 0;  // set when kind == WinnerTakeAll
  bool operator==(const Regime&) const = default;
};

struct DominanceReport {
  std::vector<DominanceInterval> intervals;
  // Means over complete intervals only; absent when a channel has none.
  std::optional<double> mean_duration_1;
  std::optional<double> mean_duration_2;
  double alternation_rate = 0.0;  // channel switches per second
  double predominance_1 = 0.0;    // fraction of the analyzed window
  double predominance_2 = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  Regime regime;
};

// Unset fields resolve against the run: t_transient = 20% of the duration,
// delta = 5% of the model's activity scale, epsilon_fusion = delta.
struct AnalysisConfig {
  std::optional<double> t_transient;
  std::optional<double> delta;
  std::optional<double> epsilon_fusion;
  int min_switches_rivalry = 3;
};

struct ResolvedAnalysisConfig {
  double t_transient = 0.0;
  double delta = 0.0;
  double epsilon_fusion = 0.0;
  int min_switches_rivalry = 3;
  void validate() const;
};

// The two percept-activity series of a run (E_i, u_i or x_i) plus the scale
// the thresholds are relative to.
struct ActivityTrace {
  std::vector<double> t;
  std::vector<double> a1;
  std::vector<double> a2;
  double scale = 1.0;
};

ActivityTrace activity_trace(const Trajectory& traj);

// Builds a trace from labeled columns (the trajectory-CSV layout). The
// activity pair and scale are inferred from the labels: E1/E2 (scale 100),
// u1/u2 or x1/x2 (scale 1).
ActivityTrace activity_trace(const std::vector<std::string>& labels,
                             std::vector<double> times,
                             const std::vector<std::vector<double>>& columns);

ResolvedAnalysisConfig resolve_analysis(const AnalysisConfig& cfg,
                                        double duration,
                                        double activity_scale);

// First/last post-transient sample times. Throws ConfigError when fewer than
// two samples remain after the transient cut.
std::pair<double, double> analysis_window(const ActivityTrace& trace,
                                          const ResolvedAnalysisConfig& cfg);

// Hysteresis detector: channel i's interval opens at the first sample with
// activity_i - activity_j > delta and runs until the margin crosses the
// opposite threshold. Sub-threshold wobble inside an open interval neither
// closes it nor opens a new one.
std::vector<DominanceInterval> detect_dominance(
    const ActivityTrace& trace, const ResolvedAnalysisConfig& cfg);
std::vector<DominanceInterval> detect_dominance(const Trajectory& traj,
                                                const AnalysisConfig& cfg);

// Interval statistics over a window; the regime is left Undetermined.
DominanceReport dominance_stats(std::vector<DominanceInterval> intervals,
                                std::pair<double, double> window);

// Decision ladder, in order: EqualActivity (margin < epsilon throughout,
// both activities above half scale), Fusion (same margin, both below half
// scale), WinnerTakeAll (one interval spanning the window), Rivalry
// (>= min_switches_rivalry switches), else Undetermined.
Regime classify_regime(const ActivityTrace& trace,
                       const ResolvedAnalysisConfig& cfg);
Regime classify_regime(const Trajectory& traj, const AnalysisConfig& cfg);

// detect + stats + classify in one pass.
DominanceReport analyze(const ActivityTrace& trace,
                        const ResolvedAnalysisConfig& cfg);
DominanceReport analyze(const Trajectory& traj, const AnalysisConfig& cfg);

// Mean over all complete intervals of both channels; absent when none.
std::optional<double> pooled_mean_duration(const DominanceReport& report);

const char* regime_kind_name(RegimeKind kind);
std::optional<RegimeKind> regime_kind_from_name(std::string_view name);
std::string regime_label(const Regime& regime);  // "winner_take_all_1" etc.

}  // namespace rivalry
