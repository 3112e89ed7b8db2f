#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>

namespace rivalry {

// State of a two-population competition model: 4 or 6 named variables
// depending on the model. Inline storage keeps integrator stages
// allocation-free.
class StateVector {
 public:
  static constexpr std::size_t kMaxSize = 6;

  StateVector() = default;
  StateVector(std::initializer_list<double> xs) : n_(xs.size()) {
    if (xs.size() > kMaxSize)
      throw std::length_error("StateVector holds at most 6 entries");
    std::size_t i = 0;
    for (double x : xs) v_[i++] = x;
  }

  static StateVector zeros(std::size_t n) {
    if (n > kMaxSize)
      throw std::length_error("StateVector holds at most 6 entries");
    StateVector s;
    s.n_ = n;
    return s;
  }

  std::size_t size() const { return n_; }
  double operator[](std::size_t i) const { return v_[i]; }
  double& operator[](std::size_t i) { return v_[i]; }

  const double* begin() const { return v_.data(); }
  const double* end() const { return v_.data() + n_; }
  double* begin() { return v_.data(); }
  double* end() { return v_.data() + n_; }

  bool all_finite() const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!std::isfinite(v_[i])) return false;
    return true;
  }

  bool operator==(const StateVector& o) const {
    if (n_ != o.n_) return false;
    for (std::size_t i = 0; i < n_; ++i)
      if (v_[i] != o.v_[i]) return false;
    return true;
  }

 private:
  std::array<double, kMaxSize> v_{};
  std::size_t n_ = 0;
};

inline StateVector operator+(const StateVector& a, const StateVector& b) {
  StateVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline StateVector operator*(double c, const StateVector& a) {
  StateVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] *= c;
  return r;
}

}  // namespace rivalry
