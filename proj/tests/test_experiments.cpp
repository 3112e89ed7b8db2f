#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rivalry/experiments.hpp"
#include "rivalry/serialize.hpp"

using namespace rivalry;

namespace {

// Hand-built sweep result for detector-logic tests.
SweepResult synthetic_sweep(const std::vector<std::pair<Regime, double>>& rows) {
  SweepResult res;
  res.spec.model = default_params(ModelKind::Wilson);
  res.spec.axis = SweepAxis::EqualStimulus;
  res.spec.sim = default_sim_config(ModelKind::Wilson);
  double param = 1.0;
  for (const auto& [regime, rate] : rows) {
    SweepRow row;
    row.param = param;
    param += 1.0;
    row.aggregate.regime = regime;
    row.aggregate.alternation_rate = rate;
    row.aggregate.mean_duration_1 = rate > 0 ? 1000.0 / rate : 100.0;
    row.aggregate.mean_duration_2 = row.aggregate.mean_duration_1;
    row.aggregate.mean_duration_pooled = row.aggregate.mean_duration_1;
    row.aggregate.reports = 1;
    res.spec.grid.push_back(row.param);
    res.rows.push_back(row);
  }
  return res;
}

constexpr Regime kR{RegimeKind::Rivalry, 0};
constexpr Regime kW{RegimeKind::WinnerTakeAll, 1};
constexpr Regime kF{RegimeKind::Fusion, 0};

}  // namespace

TEST_CASE("spearman rank correlation") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> up{2, 4, 9, 16, 25};
  const std::vector<double> down{10, 8, 3, 2, 1};
  CHECK(spearman_rho(x, up) == doctest::Approx(1.0));
  CHECK(spearman_rho(x, down) == doctest::Approx(-1.0));

  // average ranks under ties
  const std::vector<double> x4{1, 2, 3, 4};
  const std::vector<double> tied{1, 1, 2, 2};
  CHECK(spearman_rho(x4, tied) ==
        doctest::Approx(0.894427190999916).epsilon(1e-12));

  // no rank variation -> NaN
  const std::vector<double> flat{3, 3, 3, 3};
  CHECK(std::isnan(spearman_rho(x4, flat)));

  CHECK_THROWS_AS(spearman_rho(x, x4), ConfigError);
}

TEST_CASE("relative variation") {
  const std::vector<double> v{100.0, 110.0, 90.0};
  CHECK(relative_variation(v) == doctest::Approx((110.0 - 90.0) / 90.0));
  const std::vector<double> with_zero{0.0, 1.0};
  CHECK(std::isinf(relative_variation(with_zero)));
}

TEST_CASE("sweep spec validation") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::Wilson);
  spec.sim = default_sim_config(ModelKind::Wilson);
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // empty grid
  spec.grid = {1.0, 1.0};
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // not strictly ascending
  spec.grid = {1.0, 2.0};
  spec.replicates = 0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);
  spec.replicates = 1;
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("apply_axis wires the knobs") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::Wilson);
  spec.axis = SweepAxis::EqualStimulus;
  const RowSetup eq = apply_axis(spec, 30.0);
  CHECK(eq.stim.s1 == 30.0);
  CHECK(eq.stim.s2 == 30.0);

  spec.axis = SweepAxis::CrossInhibition;
  CHECK_THROWS_AS(apply_axis(spec, 0.5), ConfigError);  // missing fixed stims
  spec.fixed = {{"s1", 22.0}, {"s2", 22.0}};
  const RowSetup cross = apply_axis(spec, 0.5);
  CHECK(std::get<WilsonParams>(cross.model.params).g == 0.5);
  CHECK(cross.stim.s1 == 22.0);

  spec.axis = SweepAxis::AsymmetricS1;
  spec.fixed = {{"s2", 22.0}};
  const RowSetup asym = apply_axis(spec, 25.0);
  CHECK(asym.stim.s1 == 25.0);
  CHECK(asym.stim.s2 == 22.0);
}

TEST_CASE("single-point sweep classifies the quiescent state as fusion") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::Wilson);
  spec.axis = SweepAxis::EqualStimulus;
  spec.grid = {0.0};
  spec.sim = default_sim_config(ModelKind::Wilson);
  spec.sim.duration = 2000.0;
  const SweepResult res = run_sweep(spec);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0].aggregate.regime.kind == RegimeKind::Fusion);
  CHECK(find_regime_bands(res).size() == 1);
}

TEST_CASE("replicate seeds follow the documented derivation") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::Kalarickal);
  spec.axis = SweepAxis::EqualStimulus;
  spec.grid = {0.6, 0.8};
  spec.replicates = 3;
  spec.sim = default_sim_config(ModelKind::Kalarickal);
  spec.sim.duration = 500.0;
  spec.sim.seed = 12345;
  const SweepResult res = run_sweep(spec);
  for (std::size_t j = 0; j < res.rows.size(); ++j)
    for (std::size_t k = 0; k < res.rows[j].replicates.size(); ++k)
      CHECK(res.rows[j].replicates[k].seed == derive_seed(12345, j, k));
}

TEST_CASE("sweeps are reproducible and job-count invariant") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::Kalarickal);
  spec.axis = SweepAxis::EqualStimulus;
  spec.grid = {0.4, 0.6, 0.8, 1.0};
  spec.replicates = 3;
  spec.sim = default_sim_config(ModelKind::Kalarickal);
  spec.sim.duration = 1500.0;
  spec.sim.seed = 7;

  const std::string serial = sweep_result_to_json(run_sweep(spec, 1)).dump();
  const std::string again = sweep_result_to_json(run_sweep(spec, 1)).dump();
  const std::string parallel = sweep_result_to_json(run_sweep(spec, 4)).dump();
  CHECK(serial == again);
  CHECK(serial == parallel);
}

TEST_CASE("row aggregates equal a recount over the replicate reports") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::Kalarickal);
  spec.axis = SweepAxis::EqualStimulus;
  spec.grid = {0.6, 0.9};
  spec.replicates = 5;
  spec.sim = default_sim_config(ModelKind::Kalarickal);
  spec.sim.duration = 2000.0;
  spec.sim.seed = 3;
  const SweepResult res = run_sweep(spec, 4);
  for (const SweepRow& row : res.rows) {
    double rate = 0, p1 = 0;
    double d1 = 0;
    int n = 0, n1 = 0;
    for (const auto& rep : row.replicates) {
      REQUIRE(rep.report.has_value());
      ++n;
      rate += rep.report->alternation_rate;
      p1 += rep.report->predominance_1;
      if (rep.report->mean_duration_1) {
        d1 += *rep.report->mean_duration_1;
        ++n1;
      }
    }
    CHECK(row.aggregate.reports == n);
    CHECK(row.aggregate.alternation_rate == doctest::Approx(rate / n).epsilon(1e-12));
    CHECK(row.aggregate.predominance_1 == doctest::Approx(p1 / n).epsilon(1e-12));
    if (n1 > 0) {
      REQUIRE(row.aggregate.mean_duration_1.has_value());
      CHECK(*row.aggregate.mean_duration_1 ==
            doctest::Approx(d1 / n1).epsilon(1e-12));
    }
  }
}

TEST_CASE("simulation failures are recorded per row, not fatal") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::LaingChow);
  spec.axis = SweepAxis::EqualStimulus;
  spec.grid = {0.2};
  spec.sim = default_sim_config(ModelKind::LaingChow);
  spec.sim.dt = 10.0;  // guaranteed blowup
  spec.sim.duration = 10000.0;
  const SweepResult res = run_sweep(spec);
  REQUIRE(res.rows.size() == 1);
  CHECK_FALSE(res.rows[0].replicates[0].report.has_value());
  CHECK_FALSE(res.rows[0].replicates[0].error.empty());
  CHECK(res.rows[0].aggregate.reports == 0);
}

TEST_CASE("band run-length encoding") {
  const auto res = synthetic_sweep({{kR, 1}, {kR, 2}, {kW, 0}, {kW, 0}, {kR, 3}});
  const auto bands = find_regime_bands(res);
  REQUIRE(bands.size() == 3);
  CHECK(bands[0].regime.kind == RegimeKind::Rivalry);
  CHECK(bands[0].row_count() == 2);
  CHECK(bands[1].regime.kind == RegimeKind::WinnerTakeAll);
  CHECK(bands[2].row_count() == 1);

  // alternating labels stay separate bands
  const auto alt = synthetic_sweep({{kR, 1}, {kF, 0}, {kR, 1}, {kF, 0}});
  CHECK(find_regime_bands(alt).size() == 4);

  // winner flips do not split a winner-take-all band
  const auto wta = synthetic_sweep(
      {{Regime{RegimeKind::WinnerTakeAll, 1}, 0},
       {Regime{RegimeKind::WinnerTakeAll, 2}, 0}});
  CHECK(find_regime_bands(wta).size() == 1);
}

TEST_CASE("band statistics reject non-rivalry rows") {
  const auto res = synthetic_sweep({{kR, 1}, {kW, 0}, {kR, 3}});
  RegimeBand whole{kR, res.rows.front().param, res.rows.back().param, 0, 2};
  CHECK_THROWS_AS(band_stat(res, whole, RowStat::AlternationRate),
                  BandSelectionError);
  RegimeBand clean{kR, res.rows[0].param, res.rows[0].param, 0, 0};
  CHECK_NOTHROW(band_stat(res, clean, RowStat::AlternationRate));
}

TEST_CASE("prop4 detector on synthetic band structures") {
  // two bands split by winner-take-all: direct compliance plus reversal
  {
    const auto res = synthetic_sweep({{kF, 0},
                                      {kR, 9},
                                      {kR, 8},
                                      {kR, 7},
                                      {kR, 6},
                                      {kR, 5},
                                      {kW, 0},
                                      {kR, 4},
                                      {kR, 5},
                                      {kR, 6},
                                      {kR, 7},
                                      {kR, 8}});
    const Prop4Result p4 = evaluate_prop4(res);
    CHECK(p4.verdict == Verdict::Holds);
    CHECK(p4.high_rho >= 0.9);
    CHECK(p4.reversal);
    CHECK(p4.reversal_rho <= -0.9);
    CHECK(p4.reversal_hi < p4.high_lo);
  }
  // one contiguous band with an interior rate minimum: split detection
  {
    const auto res = synthetic_sweep({{kR, 9},
                                      {kR, 7},
                                      {kR, 5},
                                      {kR, 3},
                                      {kR, 2},
                                      {kR, 3},
                                      {kR, 5},
                                      {kR, 7},
                                      {kR, 9}});
    const Prop4Result p4 = evaluate_prop4(res);
    CHECK(p4.verdict == Verdict::Holds);
    CHECK(p4.reversal);
    CHECK(p4.reversal_lo == res.rows.front().param);
  }
  // rising band with a short falling tail: compliance below the peak,
  // no reversal (the tail is above the compliant stretch)
  {
    const auto res = synthetic_sweep({{kR, 1},
                                      {kR, 2},
                                      {kR, 4},
                                      {kR, 6},
                                      {kR, 8},
                                      {kR, 9},
                                      {kR, 7},
                                      {kR, 5}});
    const Prop4Result p4 = evaluate_prop4(res);
    CHECK(p4.verdict == Verdict::Holds);
    CHECK_FALSE(p4.reversal);
  }
  // no rivalry rows at all
  {
    const auto res = synthetic_sweep({{kF, 0}, {kF, 0}});
    CHECK(evaluate_prop4(res).verdict == Verdict::Inconclusive);
  }
}

TEST_CASE("cross-inhibition sweep wrapper") {
  // single-point grid: trivially one row, knob applied
  const SweepResult res =
      cross_inhibition_sweep(ModelKind::LaingChow, {0.7}, 0.2, 1);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.spec.axis == SweepAxis::CrossInhibition);
  CHECK(res.spec.fixed.at("s1") == 0.2);
  CHECK(res.rows[0].aggregate.regime.kind == RegimeKind::Rivalry);
}

TEST_CASE("band edge refinement brackets the winner-take-all onset") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::LaingChow);
  spec.axis = SweepAxis::EqualStimulus;
  spec.grid = {0.36, 0.40};
  spec.sim = default_sim_config(ModelKind::LaingChow);
  const SweepResult res = run_sweep(spec, 2);
  auto bands = find_regime_bands(res);
  REQUIRE(bands.size() == 2);
  CHECK(bands[0].regime.kind == RegimeKind::Rivalry);
  CHECK(bands[1].regime.kind == RegimeKind::WinnerTakeAll);

  const auto refined = refine_band_edges(spec, bands, 0.01);
  CHECK(refined[0].param_hi == refined[1].param_lo);
  CHECK(refined[0].param_hi > 0.378);
  CHECK(refined[0].param_hi < 0.388);
}

TEST_CASE("sweep spec JSON round-trip") {
  SweepSpec spec;
  spec.model = default_params(ModelKind::LaingChow);
  spec.axis = SweepAxis::AsymmetricS1;
  spec.grid = {0.2, 0.25, 0.3};
  spec.fixed = {{"s2", 0.2}};
  spec.replicates = 2;
  spec.sim = default_sim_config(ModelKind::LaingChow);
  spec.sim.seed = 99;
  spec.analysis.delta = 0.02;

  const json j = sweep_spec_to_json(spec);
  const SweepSpec back = sweep_spec_from_json(j);
  CHECK(back.axis == SweepAxis::AsymmetricS1);
  CHECK(back.grid == spec.grid);
  CHECK(back.fixed.at("s2") == 0.2);
  CHECK(back.replicates == 2);
  CHECK(back.sim.seed == 99);
  CHECK(back.analysis.delta == 0.02);
  CHECK(sweep_result_to_json(SweepResult{spec, {}}).contains("spec"));
}

TEST_CASE("levelt expectation table") {
  CHECK(levelt_expectation(ModelKind::Wilson).require_reversal);
  CHECK(levelt_expectation(ModelKind::LaingChow).require_reversal);
  CHECK(levelt_expectation(ModelKind::Kalarickal).forbid_reversal);
  CHECK(levelt_expectation(ModelKind::LCAdaptation).forbid_wta_rows);
  const auto dep = levelt_expectation(ModelKind::LCDepression);
  CHECK_FALSE(dep.require_prop4);
  CHECK_FALSE(dep.require_reversal);
}
