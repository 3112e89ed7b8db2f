#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace rivalry {

// Bad parameters, configs, or input files. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite state encountered while stepping. Carries the simulated time at
// which the blowup was detected when known. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what,
                          std::optional<double> time = std::nullopt)
      : std::runtime_error(what), time_(time) {}
  std::optional<double> time() const { return time_; }

 private:
  std::optional<double> time_;
};

// A monotonicity statistic was requested over rows that are not all
// rivalry-classified. Raised instead of silently polluting the correlation.
class BandSelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A science verdict could not be reached (e.g. too few rivalry rows).
// CLI exit code 4.
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rivalry
