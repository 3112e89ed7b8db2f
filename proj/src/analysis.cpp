#include "rivalry/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rivalry {

void ResolvedAnalysisConfig::validate() const {
  if (!(t_transient >= 0.0)) throw ConfigError("t_transient must be >= 0");
  if (!(delta >= 0.0)) throw ConfigError("delta must be >= 0");
  if (!(epsilon_fusion >= 0.0))
    throw ConfigError("epsilon_fusion must be >= 0");
  if (min_switches_rivalry < 0)
    throw ConfigError("min_switches_rivalry must be >= 0");
}

ActivityTrace activity_trace(const Trajectory& traj) {
  const ActivityChannels ch = activity_channels(traj.model.kind());
  ActivityTrace tr;
  tr.scale = ch.scale;
  tr.t = traj.times;
  tr.a1.reserve(traj.states.size());
  tr.a2.reserve(traj.states.size());
  for (const StateVector& s : traj.states) {
    tr.a1.push_back(s[ch.i1]);
    tr.a2.push_back(s[ch.i2]);
  }
  return tr;
}

ActivityTrace activity_trace(const std::vector<std::string>& labels,
                             std::vector<double> times,
                             const std::vector<std::vector<double>>& columns) {
  if (labels.size() != columns.size())
    throw ConfigError("label/column count mismatch");
  auto find = [&](const char* name) -> int {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == name) return static_cast<int>(i);
    return -1;
  };
  struct Pair {
    const char* first;
    const char* second;
    double scale;
  };
  for (const Pair& p : {Pair{"E1", "E2", 100.0}, Pair{"u1", "u2", 1.0},
                        Pair{"x1", "x2", 1.0}}) {
    const int i = find(p.first), j = find(p.second);
    if (i >= 0 && j >= 0) {
      ActivityTrace tr;
      tr.scale = p.scale;
      tr.t = std::move(times);
      tr.a1 = columns[static_cast<std::size_t>(i)];
      tr.a2 = columns[static_cast<std::size_t>(j)];
      return tr;
    }
  }
  throw ConfigError(
      "no activity column pair found (expected E1/E2, u1/u2 or x1/x2)");
}

ResolvedAnalysisConfig resolve_analysis(const AnalysisConfig& cfg,
                                        double duration,
                                        double activity_scale) {
  ResolvedAnalysisConfig r;
  r.t_transient = cfg.t_transient.value_or(0.2 * duration);
  r.delta = cfg.delta.value_or(0.05 * activity_scale);
  r.epsilon_fusion = cfg.epsilon_fusion.value_or(r.delta);
  r.min_switches_rivalry = cfg.min_switches_rivalry;
  r.validate();
  return r;
}

namespace {

std::size_t first_post_transient(const ActivityTrace& trace,
                                 const ResolvedAnalysisConfig& cfg) {
  const auto it =
      std::lower_bound(trace.t.begin(), trace.t.end(), cfg.t_transient);
  const auto i0 = static_cast<std::size_t>(it - trace.t.begin());
  if (trace.t.size() < 2 || i0 + 2 > trace.t.size())
    throw ConfigError(
        "trajectory window is shorter than the transient cut; nothing to "
        "analyze");
  return i0;
}

}  // namespace

std::pair<double, double> analysis_window(const ActivityTrace& trace,
                                          const ResolvedAnalysisConfig& cfg) {
  const std::size_t i0 = first_post_transient(trace, cfg);
  return {trace.t[i0], trace.t.back()};
}

std::vector<DominanceInterval> detect_dominance(
    const ActivityTrace& trace, const ResolvedAnalysisConfig& cfg) {
  const std::size_t i0 = first_post_transient(trace, cfg);

  std::vector<DominanceInterval> out;
  int current = 0;  // 0 = no channel dominant yet
  double start = 0.0;
  for (std::size_t i = i0; i < trace.t.size(); ++i) {
    const double margin = trace.a1[i] - trace.a2[i];
    if (current == 0) {
      if (margin > cfg.delta) {
        current = 1;
        start = trace.t[i];
      } else if (-margin > cfg.delta) {
        current = 2;
        start = trace.t[i];
      }
    } else if (current == 1 && -margin > cfg.delta) {
      out.push_back({1, start, trace.t[i], false});
      current = 2;
      start = trace.t[i];
    } else if (current == 2 && margin > cfg.delta) {
      out.push_back({2, start, trace.t[i], false});
      current = 1;
      start = trace.t[i];
    }
  }
  if (current != 0 && trace.t.back() > start)
    out.push_back({current, start, trace.t.back(), false});

  // Only interior intervals are bounded by switches on both sides.
  for (std::size_t k = 1; k + 1 < out.size(); ++k) out[k].complete = true;
  return out;
}

std::vector<DominanceInterval> detect_dominance(const Trajectory& traj,
                                                const AnalysisConfig& cfg) {
  const ActivityTrace tr = activity_trace(traj);
  return detect_dominance(
      tr, resolve_analysis(cfg, traj.config.duration, tr.scale));
}

DominanceReport dominance_stats(std::vector<DominanceInterval> intervals,
                                std::pair<double, double> window) {
  const double span = window.second - window.first;
  if (!(span > 0.0)) throw ConfigError("analysis window must have length > 0");

  DominanceReport r;
  r.window = window;

  double total[2] = {0.0, 0.0};
  double complete_sum[2] = {0.0, 0.0};
  std::size_t complete_count[2] = {0, 0};
  std::size_t switches = 0;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const DominanceInterval& iv = intervals[i];
    const std::size_t c = static_cast<std::size_t>(iv.channel - 1);
    total[c] += iv.end - iv.start;
    if (iv.complete) {
      complete_sum[c] += iv.end - iv.start;
      ++complete_count[c];
    }
    if (i > 0 && intervals[i].channel != intervals[i - 1].channel) ++switches;
  }

  if (complete_count[0] > 0)
    r.mean_duration_1 = complete_sum[0] / static_cast<double>(complete_count[0]);
  if (complete_count[1] > 0)
    r.mean_duration_2 = complete_sum[1] / static_cast<double>(complete_count[1]);
  r.predominance_1 = total[0] / span;
  r.predominance_2 = total[1] / span;
  r.alternation_rate = static_cast<double>(switches) / (span / 1000.0);
  r.intervals = std::move(intervals);
  return r;
}

Regime classify_regime(const ActivityTrace& trace,
                       const ResolvedAnalysisConfig& cfg) {
  const std::size_t i0 = first_post_transient(trace, cfg);
  const double mid = 0.5 * trace.scale;

  bool margin_small = true;
  bool all_high = true;
  bool all_low = true;
  for (std::size_t i = i0; i < trace.t.size(); ++i) {
    const double a1 = trace.a1[i], a2 = trace.a2[i];
    if (!(std::fabs(a1 - a2) < cfg.epsilon_fusion)) margin_small = false;
    if (!(a1 > mid && a2 > mid)) all_high = false;
    if (!(a1 < mid && a2 < mid)) all_low = false;
  }
  if (margin_small && all_high) return {RegimeKind::EqualActivity, 0};
  if (margin_small && all_low) return {RegimeKind::Fusion, 0};

  const auto intervals = detect_dominance(trace, cfg);
  if (intervals.size() == 1 && intervals[0].start == trace.t[i0] &&
      intervals[0].end == trace.t.back())
    return {RegimeKind::WinnerTakeAll, intervals[0].channel};

  std::size_t switches = 0;
  for (std::size_t i = 1; i < intervals.size(); ++i)
    if (intervals[i].channel != intervals[i - 1].channel) ++switches;
  if (switches >= static_cast<std::size_t>(cfg.min_switches_rivalry))
    return {RegimeKind::Rivalry, 0};

  return {RegimeKind::Undetermined, 0};
}

Regime classify_regime(const Trajectory& traj, const AnalysisConfig& cfg) {
  const ActivityTrace tr = activity_trace(traj);
  return classify_regime(tr,
                         resolve_analysis(cfg, traj.config.duration, tr.scale));
}

DominanceReport analyze(const ActivityTrace& trace,
                        const ResolvedAnalysisConfig& cfg) {
  DominanceReport r =
      dominance_stats(detect_dominance(trace, cfg), analysis_window(trace, cfg));
  r.regime = classify_regime(trace, cfg);
  return r;
}

DominanceReport analyze(const Trajectory& traj, const AnalysisConfig& cfg) {
  const ActivityTrace tr = activity_trace(traj);
  return analyze(tr, resolve_analysis(cfg, traj.config.duration, tr.scale));
}

std::optional<double> pooled_mean_duration(const DominanceReport& report) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const DominanceInterval& iv : report.intervals) {
    if (iv.complete) {
      sum += iv.end - iv.start;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

const char* regime_kind_name(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::Rivalry:
      return "rivalry";
    case RegimeKind::WinnerTakeAll:
      return "winner_take_all";
    case RegimeKind::Fusion:
      return "fusion";
    case RegimeKind::EqualActivity:
      return "equal_activity";
    case RegimeKind::Undetermined:
      return "undetermined";
  }
  return "undetermined";
}

std::optional<RegimeKind> regime_kind_from_name(std::string_view name) {
  for (RegimeKind k :
       {RegimeKind::Rivalry, RegimeKind::WinnerTakeAll, RegimeKind::Fusion,
        RegimeKind::EqualActivity, RegimeKind::Undetermined}) {
    if (name == regime_kind_name(k)) return k;
  }
  return std::nullopt;
}

std::string regime_label(const Regime& regime) {
  std::string s = regime_kind_name(regime.kind);
  if (regime.kind == RegimeKind::WinnerTakeAll) {
    s += '_';
    s += std::to_string(regime.winner);
  }
  return s;
}

}  // namespace rivalry
