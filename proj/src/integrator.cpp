#include "rivalry/integrator.hpp"

#include <cmath>
#include <sstream>

namespace rivalry {

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (!(duration >= dt)) throw ConfigError("duration must be >= dt");
  if (record_every < 1) throw ConfigError("record_every must be >= 1");
}

SimConfig default_sim_config(ModelKind kind) {
  SimConfig c;
  switch (kind) {
    case ModelKind::Wilson:
      c.dt = 0.5;
      // Dominance durations near the low-strength band edges run to several
      // seconds; shorter windows cannot collect enough switches there.
      c.duration = 120000.0;
      c.scheme = Scheme::Rk4;
      break;
    case ModelKind::LaingChow:
    case ModelKind::LCAdaptation:
    case ModelKind::LCDepression:
      c.dt = 0.05;  // tau_u = 1 ms is the fastest time constant
      c.duration = 10000.0;
      c.scheme = Scheme::Rk4;
      break;
    case ModelKind::Kalarickal:
      c.dt = 0.1;  // dimensionless time units; the -x term has unit rate
      c.duration = 5000.0;
      c.scheme = Scheme::Euler;
      break;
  }
  return c;
}

StateVector initial_state_vector(const ModelInstance& m,
                                 const InitialState& init) {
  const ModelKind kind = m.kind();
  if (const auto* explicit_state = std::get_if<StateVector>(&init)) {
    if (explicit_state->size() != state_size(kind))
      throw ConfigError("initial state length does not match the model");
    if (!explicit_state->all_finite())
      throw ConfigError("initial state must be finite");
    return *explicit_state;
  }

  StateVector s = StateVector::zeros(state_size(kind));
  switch (kind) {
    case ModelKind::Wilson:
    case ModelKind::LCAdaptation:
      break;
    case ModelKind::LaingChow:  // synaptic efficacies rest at 1
      s[2] = 1.0;
      s[5] = 1.0;
      break;
    case ModelKind::LCDepression:
    case ModelKind::Kalarickal:
      s[1] = 1.0;
      s[3] = 1.0;
      break;
  }
  if (std::get<InitPreset>(init) == InitPreset::Perturbed)
    s[activity_channels(kind).i1] += 0.05;
  return s;
}

namespace {

void check_finite(const StateVector& s, double t) {
  if (!s.all_finite()) {
    std::ostringstream os;
    os << "state became non-finite at t = " << t;
    throw NumericalError(os.str(), t);
  }
}

}  // namespace

StateVector step_rk4(const ModelInstance& m, const StateVector& s,
                     Stimulus stim, double dt, NoisePair noise) {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  StateVector next = rk4_step(
      [&](const StateVector& y) { return rhs(m, y, stim, noise); }, s, dt);
  if (!next.all_finite())
    throw NumericalError("state became non-finite during rk4 step");
  return next;
}

StateVector step_euler(const ModelInstance& m, const StateVector& s,
                       Stimulus stim, double dt, NoisePair noise) {
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  StateVector next = euler_step(
      [&](const StateVector& y) { return rhs(m, y, stim, noise); }, s, dt);
  if (!next.all_finite())
    throw NumericalError("state became non-finite during euler step");
  return next;
}

Trajectory simulate(const ModelInstance& m, Stimulus stim,
                    const SimConfig& config, const NoiseSource* noise) {
  m.validate();
  stim.validate();
  config.validate();

  const auto n_steps =
      static_cast<std::int64_t>(std::llround(config.duration / config.dt));
  if (n_steps < 1) throw ConfigError("duration must cover at least one step");

  Trajectory traj;
  traj.model = m;
  traj.stim = stim;
  traj.config = config;
  traj.times.reserve(static_cast<std::size_t>(n_steps / config.record_every) +
                     1);
  traj.states.reserve(traj.times.capacity());

  StateVector y = initial_state_vector(m, config.initial_state);
  traj.times.push_back(0.0);
  traj.states.push_back(y);

  std::visit(
      [&](const auto& params) {
        using P = std::decay_t<decltype(params)>;
        constexpr bool kNoisy = std::is_same_v<P, KalarickalParams>;

        NoiseStream default_stream(config.seed, 0.0, 0.0);
        const NoiseSource* src = noise;
        if constexpr (kNoisy) {
          if (src == nullptr) {
            default_stream = NoiseStream(config.seed, params.p, params.m);
            src = &default_stream;
          }
        }

        NoisePair kick{};
        auto f = [&](const StateVector& v) {
          if constexpr (std::is_same_v<P, WilsonParams>)
            return rhs_wilson(v, params, stim);
          else if constexpr (std::is_same_v<P, LaingChowParams>)
            return rhs_laing_chow(v, params, stim);
          else if constexpr (std::is_same_v<P, LCAdaptationParams>)
            return rhs_lc_adaptation(v, params, stim);
          else if constexpr (std::is_same_v<P, LCDepressionParams>)
            return rhs_lc_depression(v, params, stim);
          else
            return rhs_kalarickal(v, params, stim, kick);
        };

        for (std::int64_t step = 0; step < n_steps; ++step) {
          if constexpr (kNoisy)
            kick = src->at(static_cast<std::uint64_t>(step));
          y = config.scheme == Scheme::Rk4 ? rk4_step(f, y, config.dt)
                                           : euler_step(f, y, config.dt);
          const double t = static_cast<double>(step + 1) * config.dt;
          check_finite(y, t);
          if ((step + 1) % config.record_every == 0) {
            traj.times.push_back(t);
            traj.states.push_back(y);
          }
        }
      },
      m.params);

  return traj;
}

}  // namespace rivalry
