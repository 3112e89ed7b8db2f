// Shared test helpers: synthetic activity traces and an independent
// brute-force dominance oracle. The oracle deliberately re-implements the
// margin rule as a per-sample label pass followed by run-length grouping, so
// it shares no code with the library detector.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rivalry/analysis.hpp"

namespace testsupport {

// Piecewise-constant two-channel trace with random segment lengths and
// levels, sampled on a uniform grid.
inline rivalry::ActivityTrace make_piecewise_trace(std::mt19937_64& rng,
                                                   double scale = 1.0) {
  std::uniform_int_distribution<int> n_segments(1, 12);
  std::uniform_int_distribution<int> seg_len(1, 120);
  std::uniform_real_distribution<double> level(-0.2 * scale, 1.2 * scale);

  rivalry::ActivityTrace tr;
  tr.scale = scale;
  const int segments = n_segments(rng);
  double t = 0.0;
  for (int s = 0; s < segments; ++s) {
    const int len = seg_len(rng);
    const double a1 = level(rng), a2 = level(rng);
    for (int i = 0; i < len; ++i) {
      tr.t.push_back(t);
      tr.a1.push_back(a1);
      tr.a2.push_back(a2);
      t += 1.0;
    }
  }
  // Always at least two samples.
  while (tr.t.size() < 2) {
    tr.t.push_back(t);
    tr.a1.push_back(0.0);
    tr.a2.push_back(0.0);
    t += 1.0;
  }
  return tr;
}

// Brute-force scan: label every sample with the channel that currently holds
// dominance under the +-delta hysteresis rule, then group equal labels.
inline std::vector<rivalry::DominanceInterval> oracle_detect(
    const rivalry::ActivityTrace& tr, const rivalry::ResolvedAnalysisConfig& cfg) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    if (tr.t[i] >= cfg.t_transient) idx.push_back(i);

  std::vector<int> label(idx.size(), 0);
  int held = 0;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const double m = tr.a1[idx[k]] - tr.a2[idx[k]];
    if (m > cfg.delta)
      held = 1;
    else if (m < -cfg.delta)
      held = 2;
    label[k] = held;
  }

  std::vector<rivalry::DominanceInterval> out;
  std::size_t k = 0;
  while (k < idx.size()) {
    if (label[k] == 0) {
      ++k;
      continue;
    }
    std::size_t j = k;
    while (j + 1 < idx.size() && label[j + 1] == label[k]) ++j;
    const double start = tr.t[idx[k]];
    const double end = j + 1 < idx.size() ? tr.t[idx[j + 1]] : tr.t[idx[j]];
    if (end > start) out.push_back({label[k], start, end, false});
    k = j + 1;
  }
  for (std::size_t i = 1; i + 1 < out.size(); ++i) out[i].complete = true;
  return out;
}

// Recount of dominance_stats from an interval list, written independently.
struct OracleStats {
  double sum_complete[2] = {0, 0};
  int n_complete[2] = {0, 0};
  double total[2] = {0, 0};
  int switches = 0;
};

inline OracleStats oracle_recount(
    const std::vector<rivalry::DominanceInterval>& intervals) {
  OracleStats st;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    st.total[iv.channel - 1] += iv.end - iv.start;
    if (iv.complete) {
      st.sum_complete[iv.channel - 1] += iv.end - iv.start;
      st.n_complete[iv.channel - 1] += 1;
    }
    if (i > 0 && intervals[i].channel != intervals[i - 1].channel)
      st.switches += 1;
  }
  return st;
}

}  // namespace testsupport
