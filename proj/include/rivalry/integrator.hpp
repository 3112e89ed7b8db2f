#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "rivalry/models.hpp"
#include "rivalry/noise.hpp"

namespace rivalry {

enum class Scheme { Rk4, Euler };

// Named starting points. `Perturbed` is `SymmetricZero` plus +0.05 on
// population 1's activity variable: winner-take-all outcomes depend on the
// initial conditions, so a documented symmetry-breaking default is needed.
// Depression/pathway-efficacy variables rest at 1 in both presets.
enum class InitPreset { SymmetricZero, Perturbed };

using InitialState = std::variant<InitPreset, StateVector>;

struct SimConfig {
  double dt = 0.0;            // step size (ms)
  double duration = 0.0;      // total simulated time (ms)
  std::int64_t record_every = 1;  // sampling stride in steps
  std::uint64_t seed = 0;
  InitialState initial_state = InitPreset::Perturbed;
  Scheme scheme = Scheme::Rk4;
  void validate() const;
};

// Per-model defaults: dt resolves >= 20 steps per fastest time constant,
// duration is long enough for several alternations inside rivalry bands, and
// the noisy Kalarickal model steps with Euler so its piecewise-constant noise
// enters exactly once per step.
SimConfig default_sim_config(ModelKind kind);

// Uniformly sampled run: times[k] = k * dt * record_every.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  ModelInstance model;
  Stimulus stim;
  SimConfig config;

  double sample_dt() const {
    return config.dt * static_cast<double>(config.record_every);
  }
};

// ---------------------------------------------------------------------------
// Noise. Draws are counter-based (see noise.hpp): the value for a given
// (seed, step, pathway) triple never depends on how many draws came before.

class NoiseSource {
 public:
  virtual ~NoiseSource() = default;
  virtual NoisePair at(std::uint64_t step) const = 0;
};

inline constexpr std::uint64_t kPathway21 = 21;
inline constexpr std::uint64_t kPathway12 = 12;

// Dichotomous per-step noise: +m when the pathway's uniform draw falls below
// p, else -m. The two pathways use independent draws.
class NoiseStream final : public NoiseSource {
 public:
  NoiseStream(std::uint64_t seed, double p, double m)
      : seed_(seed), p_(p), m_(m) {}

  double uniform(std::uint64_t step, std::uint64_t pathway) const {
    return to_unit_interval(hash_mix(seed_, step, pathway));
  }

  double draw(std::uint64_t step, std::uint64_t pathway) const {
    if (m_ == 0.0) return 0.0;
    return uniform(step, pathway) < p_ ? m_ : -m_;
  }

  NoisePair at(std::uint64_t step) const override {
    return {draw(step, kPathway21), draw(step, kPathway12)};
  }

 private:
  std::uint64_t seed_;
  double p_;
  double m_;
};

// Swaps the two pathway kicks; used to test block-swap symmetry of noisy runs.
class MirroredNoise final : public NoiseSource {
 public:
  explicit MirroredNoise(const NoiseSource& inner) : inner_(inner) {}
  NoisePair at(std::uint64_t step) const override {
    const NoisePair n = inner_.at(step);
    return {n.b12, n.b21};
  }

 private:
  const NoiseSource& inner_;
};

// ---------------------------------------------------------------------------
// Fixed-step schemes over any state type with + and scalar *.

template <class State, class Rhs>
State rk4_step(Rhs&& f, const State& y, double dt) {
  const State k1 = f(y);
  const State k2 = f(y + (0.5 * dt) * k1);
  const State k3 = f(y + (0.5 * dt) * k2);
  const State k4 = f(y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <class State, class Rhs>
State euler_step(Rhs&& f, const State& y, double dt) {
  return y + dt * f(y);
}

// One step of a model; the noise pair is held constant across RK4 stages.
// Throws NumericalError if the result is non-finite.
StateVector step_rk4(const ModelInstance& m, const StateVector& s,
                     Stimulus stim, double dt, NoisePair noise = {});
StateVector step_euler(const ModelInstance& m, const StateVector& s,
                       Stimulus stim, double dt, NoisePair noise = {});

StateVector initial_state_vector(const ModelInstance& m,
                                 const InitialState& init);

// Advances the model for duration/dt steps, recording every record_every-th
// state (including the initial one). Deterministic given (model, stim,
// config): the Kalarickal noise stream is derived from config.seed unless an
// explicit source is injected. Throws NumericalError with a time stamp on
// blowup.
Trajectory simulate(const ModelInstance& m, Stimulus stim,
                    const SimConfig& config,
                    const NoiseSource* noise = nullptr);

}  // namespace rivalry
