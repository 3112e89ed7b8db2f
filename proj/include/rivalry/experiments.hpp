#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rivalry/analysis.hpp"

namespace rivalry {

enum class SweepAxis { EqualStimulus, CrossInhibition, AsymmetricS1 };

const char* sweep_axis_name(SweepAxis axis);
std::optional<SweepAxis> sweep_axis_from_name(std::string_view name);

// One experiment family: vary one knob over a grid, simulate and analyze each
// point. `fixed` holds the values the axis needs held constant: s2 for
// asymmetric sweeps, s1 and s2 for cross-inhibition sweeps.
struct SweepSpec {
  ModelInstance model;
  SweepAxis axis = SweepAxis::EqualStimulus;
  std::vector<double> grid;  // strictly ascending
  std::map<std::string, double> fixed;
  int replicates = 1;
  SimConfig sim;        // sim.seed is the base seed of the whole sweep
  AnalysisConfig analysis;
  void validate() const;
};

struct ReplicateOutcome {
  std::uint64_t seed = 0;
  std::optional<DominanceReport> report;  // absent if the run blew up
  std::string error;
};

// Arithmetic means over the replicates that produced a report. Mean durations
// average only replicates where the channel had complete intervals.
struct RowAggregate {
  std::optional<double> mean_duration_1;
  std::optional<double> mean_duration_2;
  std::optional<double> mean_duration_pooled;
  double alternation_rate = 0.0;
  double predominance_1 = 0.0;
  double predominance_2 = 0.0;
  int reports = 0;
  Regime regime;  // modal regime across replicates; ties -> Undetermined
};

struct SweepRow {
  double param = 0.0;
  std::vector<ReplicateOutcome> replicates;
  RowAggregate aggregate;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
};

// Model and stimulus for one grid value of a sweep.
struct RowSetup {
  ModelInstance model;
  Stimulus stim;
};
RowSetup apply_axis(const SweepSpec& spec, double value);

// Runs every (grid value, replicate) pair; replicate k of grid point j uses
// seed derive_seed(spec.sim.seed, j, k). Rows are independent, so jobs > 1
// distributes them over worker threads; results are identical to jobs == 1.
// Numerical blowups are recorded in the row, not fatal.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1);

// Sweeps the model's cross-inhibition knob (g or beta, both inhibitory
// weights for Kalarickal) at fixed equal stimuli. The stimulus should sit
// inside a rivalry band for the duration statistics to mean anything.
SweepResult cross_inhibition_sweep(ModelKind kind, std::vector<double> grid,
                                   double stimulus, std::uint64_t seed = 0,
                                   int jobs = 1);

// Maximal runs of equal regime along the grid.
struct RegimeBand {
  Regime regime;
  double param_lo = 0.0;
  double param_hi = 0.0;
  std::size_t row_lo = 0;
  std::size_t row_hi = 0;  // inclusive
  std::size_t row_count() const { return row_hi - row_lo + 1; }
};
std::vector<RegimeBand> find_regime_bands(const SweepResult& result);

// Sharpens each band boundary by bisecting fresh simulations between the
// bracketing grid points, down to tol_frac of the local grid spacing.
// Probe replicates reuse the left row's replicate seeds.
std::vector<RegimeBand> refine_band_edges(const SweepSpec& spec,
                                          std::vector<RegimeBand> bands,
                                          double tol_frac = 0.01);

// Spearman rank correlation with average ranks on ties. NaN when either
// argument has no rank variation.
double spearman_rho(std::span<const double> x, std::span<const double> y);

// (max - min) / min over the values; the "varies by less than X%" statistic.
double relative_variation(std::span<const double> values);

// Per-row statistic extractors used by the proposition checks. Throws
// BandSelectionError if any selected row is not rivalry-classified or lacks
// the statistic.
enum class RowStat {
  MeanDuration1,
  MeanDuration2,
  MeanDurationPooled,
  AlternationRate,
  Predominance1,
};
std::vector<double> band_params(const SweepResult& result,
                                const RegimeBand& band);
std::vector<double> band_stat(const SweepResult& result,
                              const RegimeBand& band, RowStat stat);

// ---------------------------------------------------------------------------
// Levelt proposition suite.

enum class Verdict { Holds, Fails, Inconclusive };
const char* verdict_name(Verdict v);

struct PropositionResult {
  Verdict verdict = Verdict::Inconclusive;
  double rho = 0.0;       // the monotonicity statistic
  double aux = 0.0;       // prop 2: relative variation of the other eye
  double band_lo = 0.0;   // parameter range examined
  double band_hi = 0.0;
  std::string note;
};

struct Prop4Result {
  Verdict verdict = Verdict::Inconclusive;
  double high_rho = 0.0;  // alternation rate vs strength, high-strength band
  double high_lo = 0.0;
  double high_hi = 0.0;
  bool reversal = false;  // a lower band where the direction flips
  double reversal_rho = 0.0;
  double reversal_lo = 0.0;
  double reversal_hi = 0.0;
  std::string note;
};

struct LeveltReport {
  ModelKind model = ModelKind::Wilson;
  PropositionResult prop1;           // predominance follows the stronger eye
  PropositionResult prop2_modified;  // stronger eye's duration grows,
                                     // other eye's stays put
  PropositionResult prop3_modified;  // alternation rate falls with asymmetry
  Prop4Result prop4_modified;        // equal-strength direction + reversal
  SweepResult equal;
  SweepResult cross_inhibition;
  SweepResult asymmetric;
};

// Minimum rivalry rows for a conclusive correlation, and the rank-correlation
// threshold the propositions are tested at.
inline constexpr std::size_t kMinRivalryRows = 5;
inline constexpr double kRhoThreshold = 0.9;
inline constexpr double kFlatFraction = 0.2;

// Proposition-4 detector over an equal-stimulus sweep. The compliant
// (rising-rate) stretch is the top rivalry band, split at its interior
// alternation-rate extremum when the band as a whole is not monotone; a
// falling-rate stretch strictly below it counts as the reversal.
Prop4Result evaluate_prop4(const SweepResult& equal);

LeveltReport evaluate_levelt(ModelKind kind, SweepResult equal,
                             SweepResult cross_inhibition,
                             SweepResult asymmetric);

// Default grids: spans sub-threshold through saturation for each model's
// input scale. Band edges are artifact measurements, not published values.
std::vector<double> default_equal_grid(ModelKind kind);
std::vector<double> default_cross_inhibition_grid(ModelKind kind);
int default_replicates(ModelKind kind);

struct LeveltOptions {
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Orchestrates the three default sweeps: equal-stimulus grid first, then the
// asymmetric and cross-inhibition sweeps anchored at the midpoint of the
// high-strength rivalry band.
LeveltReport run_levelt(ModelKind kind, const LeveltOptions& opts = {});

// Per-model outcome table the CLI gates its exit code on.
struct LeveltExpectation {
  bool require_prop4 = false;      // high-band direction must hold
  bool require_reversal = false;   // low-strength reversal must be found
  bool forbid_reversal = false;    // reversal must be absent
  bool forbid_wta_rows = false;    // equal sweep must contain no WTA row
};
LeveltExpectation levelt_expectation(ModelKind kind);

// Failure strings are empty when the report matches the expectation table.
std::vector<std::string> check_levelt_expectation(const LeveltReport& report);

}  // namespace rivalry
