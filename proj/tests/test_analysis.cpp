#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "rivalry/csv.hpp"
#include "rivalry/serialize.hpp"
#include "support.hpp"

using namespace rivalry;
using testsupport::make_piecewise_trace;
using testsupport::oracle_detect;
using testsupport::oracle_recount;

namespace {

// u1 high on [0,300), u2 high on [300,600), repeated; 1 ms sampling.
ActivityTrace square_wave(int periods, double half = 300.0) {
  ActivityTrace tr;
  tr.scale = 1.0;
  const double total = 2.0 * half * periods;
  for (double t = 0.0; t <= total; t += 1.0) {
    const bool first_half = std::fmod(t, 2.0 * half) < half;
    tr.t.push_back(t);
    tr.a1.push_back(first_half ? 1.0 : 0.0);
    tr.a2.push_back(first_half ? 0.0 : 1.0);
  }
  return tr;
}

ResolvedAnalysisConfig cfg_of(double transient, double delta) {
  ResolvedAnalysisConfig cfg;
  cfg.t_transient = transient;
  cfg.delta = delta;
  cfg.epsilon_fusion = delta;
  cfg.min_switches_rivalry = 3;
  return cfg;
}

}  // namespace

TEST_CASE("square wave yields eight equal intervals") {
  const ActivityTrace tr = square_wave(4);
  const auto cfg = cfg_of(0.0, 0.1);
  const auto intervals = detect_dominance(tr, cfg);
  REQUIRE(intervals.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(intervals[i].channel == (i % 2 == 0 ? 1 : 2));
    CHECK(intervals[i].end - intervals[i].start == doctest::Approx(300.0));
    CHECK(intervals[i].complete == (i > 0 && i < 7));
  }

  const DominanceReport r = dominance_stats(intervals, {0.0, 2400.0});
  REQUIRE(r.mean_duration_1.has_value());
  REQUIRE(r.mean_duration_2.has_value());
  CHECK(*r.mean_duration_1 == doctest::Approx(300.0));
  CHECK(*r.mean_duration_2 == doctest::Approx(300.0));
  CHECK(r.alternation_rate == doctest::Approx(7.0 / 2.4).epsilon(1e-12));
  CHECK(r.predominance_1 == doctest::Approx(0.5));
  CHECK(r.predominance_2 == doctest::Approx(0.5));

  CHECK(classify_regime(tr, cfg).kind == RegimeKind::Rivalry);
}

TEST_CASE("constant dominance gives one censored interval") {
  ActivityTrace tr;
  tr.scale = 1.0;
  for (double t = 0.0; t <= 1000.0; t += 1.0) {
    tr.t.push_back(t);
    tr.a1.push_back(1.0);
    tr.a2.push_back(0.0);
  }
  const auto cfg = cfg_of(0.0, 0.05);
  const auto intervals = detect_dominance(tr, cfg);
  REQUIRE(intervals.size() == 1);
  CHECK(intervals[0].channel == 1);
  CHECK_FALSE(intervals[0].complete);

  const DominanceReport r = dominance_stats(intervals, {0.0, 1000.0});
  CHECK_FALSE(r.mean_duration_1.has_value());
  CHECK(r.alternation_rate == 0.0);
  CHECK(r.predominance_1 == doctest::Approx(1.0));
  CHECK(r.predominance_2 == 0.0);

  CHECK(classify_regime(tr, cfg) == Regime{RegimeKind::WinnerTakeAll, 1});
}

TEST_CASE("classification ladder rules") {
  const auto cfg100 = [] {
    ResolvedAnalysisConfig c;
    c.t_transient = 0.0;
    c.delta = 5.0;
    c.epsilon_fusion = 5.0;
    c.min_switches_rivalry = 3;
    return c;
  }();

  ActivityTrace high;
  high.scale = 100.0;
  ActivityTrace low = high;
  for (double t = 0.0; t <= 100.0; t += 1.0) {
    high.t.push_back(t);
    high.a1.push_back(80.0);
    high.a2.push_back(80.0);
    low.t.push_back(t);
    low.a1.push_back(0.0);
    low.a2.push_back(0.0);
  }
  CHECK(classify_regime(high, cfg100).kind == RegimeKind::EqualActivity);
  CHECK(classify_regime(low, cfg100).kind == RegimeKind::Fusion);

  // one early switch is neither rivalry nor winner-take-all
  ActivityTrace once;
  once.scale = 1.0;
  for (double t = 0.0; t <= 100.0; t += 1.0) {
    once.t.push_back(t);
    once.a1.push_back(t < 40.0 ? 1.0 : 0.0);
    once.a2.push_back(t < 40.0 ? 0.0 : 1.0);
  }
  CHECK(classify_regime(once, cfg_of(0.0, 0.1)).kind ==
        RegimeKind::Undetermined);
}

TEST_CASE("window shorter than the transient cut is a config error") {
  const ActivityTrace tr = square_wave(1);
  CHECK_THROWS_AS(detect_dominance(tr, cfg_of(1e6, 0.1)), ConfigError);
  CHECK_THROWS_AS(analysis_window(tr, cfg_of(1e6, 0.1)), ConfigError);
}

TEST_CASE("analysis defaults resolve from duration and scale") {
  AnalysisConfig cfg;
  const auto r = resolve_analysis(cfg, 10000.0, 100.0);
  CHECK(r.t_transient == doctest::Approx(2000.0));
  CHECK(r.delta == doctest::Approx(5.0));
  CHECK(r.epsilon_fusion == doctest::Approx(5.0));
  CHECK(r.min_switches_rivalry == 3);

  cfg.delta = 0.01;
  const auto r2 = resolve_analysis(cfg, 10000.0, 1.0);
  CHECK(r2.delta == 0.01);
  CHECK(r2.epsilon_fusion == 0.01);  // follows delta when unset
}

TEST_CASE("detector matches the brute-force oracle on random traces") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const ActivityTrace tr = make_piecewise_trace(rng);
    const auto cfg = cfg_of(0.0, 0.05);
    const auto got = detect_dominance(tr, cfg);
    const auto want = oracle_detect(tr, cfg);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].channel == want[i].channel);
      CHECK(got[i].start == want[i].start);
      CHECK(got[i].end == want[i].end);
      CHECK(got[i].complete == want[i].complete);
    }
  }
}

TEST_CASE("intervals tile the window and alternate channels") {
  std::mt19937_64 rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    const ActivityTrace tr = make_piecewise_trace(rng);
    const auto cfg = cfg_of(0.0, 0.08);
    const auto intervals = detect_dominance(tr, cfg);
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      CHECK(intervals[i].channel != intervals[i - 1].channel);
      CHECK(intervals[i].start == intervals[i - 1].end);  // no gaps inside
    }
    if (!intervals.empty()) {
      CHECK(intervals.back().end == tr.t.back());
      CHECK(intervals.front().start >= tr.t.front());
    }
    // predominances plus the undecided prefix account for the whole window
    const auto window = analysis_window(tr, cfg);
    const DominanceReport r = dominance_stats(intervals, window);
    double covered = 0.0;
    for (const auto& iv : intervals) covered += iv.end - iv.start;
    const double undecided =
        (window.second - window.first - covered) / (window.second - window.first);
    CHECK(r.predominance_1 + r.predominance_2 + undecided ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("widening the margin never adds switches") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 100; ++trial) {
    const ActivityTrace tr = make_piecewise_trace(rng);
    const auto narrow = detect_dominance(tr, cfg_of(0.0, 0.04));
    const auto wide = detect_dominance(tr, cfg_of(0.0, 0.08));
    CHECK(wide.size() <= narrow.size());
  }
}

TEST_CASE("relabeling channels swaps every output exactly") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    const ActivityTrace tr = make_piecewise_trace(rng);
    ActivityTrace swapped = tr;
    std::swap(swapped.a1, swapped.a2);
    const auto cfg = cfg_of(0.0, 0.05);

    const auto a = detect_dominance(tr, cfg);
    const auto b = detect_dominance(swapped, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(b[i].channel == 3 - a[i].channel);
      CHECK(b[i].start == a[i].start);
      CHECK(b[i].end == a[i].end);
    }

    const auto window = analysis_window(tr, cfg);
    const DominanceReport ra = dominance_stats(a, window);
    const DominanceReport rb = dominance_stats(b, window);
    CHECK(ra.predominance_1 == rb.predominance_2);
    CHECK(ra.predominance_2 == rb.predominance_1);
    CHECK(ra.alternation_rate == rb.alternation_rate);
    CHECK(ra.mean_duration_1 == rb.mean_duration_2);
    CHECK(ra.mean_duration_2 == rb.mean_duration_1);

    const Regime ga = classify_regime(tr, cfg);
    const Regime gb = classify_regime(swapped, cfg);
    CHECK(ga.kind == gb.kind);
    if (ga.kind == RegimeKind::WinnerTakeAll)
      CHECK(gb.winner == 3 - ga.winner);
  }
}

TEST_CASE("stats recount matches on a real rivalry run") {
  const ModelInstance m = default_params(ModelKind::Wilson);
  SimConfig cfg = default_sim_config(ModelKind::Wilson);
  cfg.duration = 20000.0;
  const Trajectory traj = simulate(m, {22.0, 22.0}, cfg);

  const AnalysisConfig acfg;
  const DominanceReport r = analyze(traj, acfg);
  CHECK(r.regime.kind == RegimeKind::Rivalry);

  const auto st = oracle_recount(r.intervals);
  const double span = r.window.second - r.window.first;
  CHECK(r.predominance_1 == doctest::Approx(st.total[0] / span).epsilon(1e-12));
  CHECK(r.predominance_2 == doctest::Approx(st.total[1] / span).epsilon(1e-12));
  CHECK(r.alternation_rate ==
        doctest::Approx(st.switches / (span / 1000.0)).epsilon(1e-12));
  REQUIRE(r.mean_duration_1.has_value());
  CHECK(*r.mean_duration_1 ==
        doctest::Approx(st.sum_complete[0] / st.n_complete[0]).epsilon(1e-12));

  // pooled mean over both channels
  const auto pooled = pooled_mean_duration(r);
  REQUIRE(pooled.has_value());
  CHECK(*pooled == doctest::Approx((st.sum_complete[0] + st.sum_complete[1]) /
                                   (st.n_complete[0] + st.n_complete[1]))
                       .epsilon(1e-12));
}

TEST_CASE("interval list from the exported CSV matches the direct analysis") {
  const ModelInstance m = default_params(ModelKind::Wilson);
  SimConfig cfg = default_sim_config(ModelKind::Wilson);
  cfg.duration = 20000.0;
  const Trajectory traj = simulate(m, {22.0, 22.0}, cfg);

  std::istringstream is(trajectory_csv(traj));
  const CsvTrajectory parsed = read_trajectory_csv(is);
  const ActivityTrace from_csv =
      activity_trace(parsed.labels, parsed.t, parsed.columns);
  CHECK(from_csv.scale == 100.0);

  const ActivityTrace direct = activity_trace(traj);
  const auto rcfg = resolve_analysis({}, cfg.duration, 100.0);
  const auto a = detect_dominance(direct, rcfg);
  const auto b = oracle_detect(from_csv, rcfg);  // independent scan over CSV
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].channel == b[i].channel);
    CHECK(a[i].start == b[i].start);  // 17 digits round-trip exactly
    CHECK(a[i].end == b[i].end);
  }
}

TEST_CASE("report serialization shapes") {
  const ActivityTrace tr = square_wave(4);
  const auto cfg = cfg_of(0.0, 0.1);
  const DominanceReport r = analyze(tr, cfg);
  const json j = report_to_json(r);
  CHECK(j.at("regime").at("kind") == "rivalry");
  CHECK(j.at("intervals").size() == 8);
  CHECK(j.at("mean_duration_1").is_number());

  DominanceReport empty;
  empty.window = {0.0, 1.0};
  const json je = report_to_json(empty);
  CHECK(je.at("mean_duration_1").is_null());

  CHECK(regime_label(Regime{RegimeKind::WinnerTakeAll, 2}) ==
        "winner_take_all_2");
  CHECK(regime_label(Regime{RegimeKind::Fusion, 0}) == "fusion");

  std::ostringstream os;
  write_intervals_csv(r.intervals, os);
  CHECK(os.str().substr(0, 32) == "channel,start_ms,end_ms,complete");
}

TEST_CASE("activity trace requires a known label pair") {
  const std::vector<std::string> labels{"q1", "q2"};
  std::vector<std::vector<double>> cols{{0.0}, {0.0}};
  CHECK_THROWS_AS(activity_trace(labels, {0.0}, cols), ConfigError);
}
