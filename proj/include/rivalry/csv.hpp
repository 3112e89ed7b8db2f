#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rivalry/analysis.hpp"
#include "rivalry/experiments.hpp"
#include "rivalry/integrator.hpp"

namespace rivalry {

// All floats are printed with 17 significant digits so text round-trips are
// exact.
std::string format_double(double v);

// Header `t,<var labels...>`, one row per recorded sample.
void write_trajectory_csv(const Trajectory& traj, std::ostream& os);
std::string trajectory_csv(const Trajectory& traj);

// A parsed trajectory file: per-variable columns, labels exclude `t`.
struct CsvTrajectory {
  std::vector<std::string> labels;
  std::vector<double> t;
  std::vector<std::vector<double>> columns;
};

// Throws ConfigError naming the offending line on malformed input.
CsvTrajectory read_trajectory_csv(std::istream& is);
CsvTrajectory read_trajectory_csv_file(const std::string& path);

// `channel,start_ms,end_ms,complete`
void write_intervals_csv(std::span<const DominanceInterval> intervals,
                         std::ostream& os);

// `param,replicate,regime,mean_dur_1,mean_dur_2,alt_rate,predom_1,predom_2`;
// absent means are empty fields.
void write_sweep_csv(const SweepResult& result, std::ostream& os);
std::string sweep_csv(const SweepResult& result);

}  // namespace rivalry
