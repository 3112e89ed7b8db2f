#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "rivalry/errors.hpp"
#include "rivalry/state.hpp"

namespace rivalry {

// Five mutual-inhibition firing-rate models of binocular rivalry. Each model
// describes two competing populations; slow negative feedback (spike-frequency
// adaptation and/or synaptic depression) drives the alternation.

enum class ModelKind {
  Wilson,        // 6 ODEs, separate inhibitory populations, Naka-Rushton gain
  LaingChow,     // 6 ODEs, adaptation + depression, Heaviside gain
  LCAdaptation,  // 4 ODEs, adaptation only, sigmoid gain
  LCDepression,  // 4 ODEs, depression only, sigmoid gain
  Kalarickal,    // 4 ODEs, pathway adaptation + dichotomous noise
};

// ---------------------------------------------------------------------------
// Parameter records. Defaults are the reference sets these models are usually
// run with; time constants in ms. All records are validated on use: invalid
// values are rejected, never clamped.

struct WilsonParams {
  double g = 0.45;       // cross-inhibition strength
  double h = 0.47;       // adaptation coupling
  double tau_e = 20.0;   // excitatory firing-rate time constant
  double tau_h = 900.0;  // adaptation time constant (slow)
  double tau_i = 11.0;   // inhibitory firing-rate time constant
  void validate() const;
};

struct LaingChowParams {
  double alpha = 0.35;  // recurrent-excitation scale
  double beta = 0.7;    // cross-inhibition scale
  double phi_a = 0.6;   // adaptation scale
  double phi_d = 0.6;   // depression scale
  double tau_a = 20.0;  // adaptation time constant
  double tau_d = 40.0;  // depression time constant
  double tau_u = 1.0;   // firing-rate time constant
  void validate() const;
};

struct LCAdaptationParams {
  double beta = 0.9;     // cross-inhibition
  double g = 0.5;        // adaptation gain
  double tau_a = 100.0;  // adaptation time constant
  double tau_u = 1.0;    // firing-rate time constant
  double k = 0.1;        // sigmoid slope reciprocal
  double theta = 0.2;    // sigmoid threshold
  void validate() const;
};

struct LCDepressionParams {
  double beta = 0.9;     // cross-inhibition
  double gamma = 0.5;    // depression usage rate
  double tau_d = 100.0;  // depression time constant
  double tau_u = 1.0;    // firing-rate time constant
  double k = 0.1;        // sigmoid slope reciprocal
  double theta = 0.2;    // sigmoid threshold
  void validate() const;
};

struct KalarickalParams {
  double w_exc_1 = 0.25;   // excitatory input pathway weight, neuron 1
  double w_exc_2 = 0.25;   // excitatory input pathway weight, neuron 2
  double w_inh_12 = 250.0; // inhibitory pathway weight 1 -> 2
  double w_inh_21 = 250.0; // inhibitory pathway weight 2 -> 1
  double c1 = 0.01;        // shunting floor constant
  double c2 = 0.008;       // adaptation rate
  double c3 = 0.083;       // adaptation usage constant
  double p = 0.5;          // probability of a +m noise kick
  double m = 0.0025;       // noise magnitude
  void validate() const;
};

// Constant input strengths to the two populations (V_i in the Wilson model,
// I_i elsewhere).
struct Stimulus {
  double s1 = 0.0;
  double s2 = 0.0;
  void validate() const;
};

// Per-step dichotomous noise kicks entering the two adaptation pathways of
// the Kalarickal model. Drawn outside the RHS so the RHS stays pure.
struct NoisePair {
  double b21 = 0.0;
  double b12 = 0.0;
};

// ---------------------------------------------------------------------------
// Gain functions.

// Saturating firing-rate gain: 100 * max(x,0)^2 / ((10+H)^2 + max(x,0)^2).
// Output lies in [0, 100).
double naka_rushton(double x, double adaptation);

// Step gain with f(0) = 1.
double heaviside(double x);

// 1 / (1 + exp(-(x - theta)/k)); 1/k is the slope at threshold.
double sigmoid(double x, double k, double theta);

// ---------------------------------------------------------------------------
// Right-hand sides (time derivatives, 1/ms). Pure functions of their inputs;
// state layouts are given by state_labels(). All throw ConfigError on a state
// length mismatch.

// (E1, H1, I1, E2, H2, I2)
StateVector rhs_wilson(const StateVector& s, const WilsonParams& p,
                       Stimulus stim);
// (u1, a1, g1, u2, a2, g2)
StateVector rhs_laing_chow(const StateVector& s, const LaingChowParams& p,
                           Stimulus stim);
// (u1, a1, u2, a2)
StateVector rhs_lc_adaptation(const StateVector& s,
                              const LCAdaptationParams& p, Stimulus stim);
// (u1, g1, u2, g2)
StateVector rhs_lc_depression(const StateVector& s,
                              const LCDepressionParams& p, Stimulus stim);
// (x1, y21, x2, y12); noise kicks enter the y equations only.
StateVector rhs_kalarickal(const StateVector& s, const KalarickalParams& p,
                           Stimulus stim, NoisePair noise);

// ---------------------------------------------------------------------------
// Tagged model + parameters. The variant order matches ModelKind.

struct ModelInstance {
  std::variant<WilsonParams, LaingChowParams, LCAdaptationParams,
               LCDepressionParams, KalarickalParams>
      params;
  std::map<std::string, bool> metadata;

  ModelKind kind() const { return static_cast<ModelKind>(params.index()); }
  std::size_t state_size() const;
  void validate() const;
};

// Reference parameter set for a model kind. The depression-only variant has
// no published values for gamma/tau_d; its instance carries
// metadata["implementer_default"] = true to flag the shipped choice.
ModelInstance default_params(ModelKind kind);

// Dispatching RHS. The noise pair is consumed by the Kalarickal model only.
StateVector rhs(const ModelInstance& m, const StateVector& s, Stimulus stim,
                NoisePair noise = {});

std::span<const char* const> state_labels(ModelKind kind);
std::size_t state_size(ModelKind kind);

// Which state entries carry the percept activity (E_i, u_i or x_i) and the
// activity scale the analysis thresholds are relative to.
struct ActivityChannels {
  std::size_t i1;
  std::size_t i2;
  double scale;
};
ActivityChannels activity_channels(ModelKind kind);

const char* model_name(ModelKind kind);  // "wilson", "laing-chow", ...
std::optional<ModelKind> model_kind_from_name(std::string_view name);

// ---------------------------------------------------------------------------
// Field tables: single source of truth for JSON serialization and for
// name-based overrides (`--param g=0.5`).

template <class P>
struct ParamField {
  const char* name;
  double P::* member;
};

template <class P>
inline constexpr std::nullptr_t param_fields = nullptr;

template <>
inline constexpr std::array<ParamField<WilsonParams>, 5>
    param_fields<WilsonParams>{{{"g", &WilsonParams::g},
                                {"h", &WilsonParams::h},
                                {"tau_e", &WilsonParams::tau_e},
                                {"tau_h", &WilsonParams::tau_h},
                                {"tau_i", &WilsonParams::tau_i}}};

template <>
inline constexpr std::array<ParamField<LaingChowParams>, 7>
    param_fields<LaingChowParams>{{{"alpha", &LaingChowParams::alpha},
                                   {"beta", &LaingChowParams::beta},
                                   {"phi_a", &LaingChowParams::phi_a},
                                   {"phi_d", &LaingChowParams::phi_d},
                                   {"tau_a", &LaingChowParams::tau_a},
                                   {"tau_d", &LaingChowParams::tau_d},
                                   {"tau_u", &LaingChowParams::tau_u}}};

template <>
inline constexpr std::array<ParamField<LCAdaptationParams>, 6>
    param_fields<LCAdaptationParams>{{{"beta", &LCAdaptationParams::beta},
                                      {"g", &LCAdaptationParams::g},
                                      {"tau_a", &LCAdaptationParams::tau_a},
                                      {"tau_u", &LCAdaptationParams::tau_u},
                                      {"k", &LCAdaptationParams::k},
                                      {"theta", &LCAdaptationParams::theta}}};

template <>
inline constexpr std::array<ParamField<LCDepressionParams>, 6>
    param_fields<LCDepressionParams>{{{"beta", &LCDepressionParams::beta},
                                      {"gamma", &LCDepressionParams::gamma},
                                      {"tau_d", &LCDepressionParams::tau_d},
                                      {"tau_u", &LCDepressionParams::tau_u},
                                      {"k", &LCDepressionParams::k},
                                      {"theta", &LCDepressionParams::theta}}};

template <>
inline constexpr std::array<ParamField<KalarickalParams>, 9>
    param_fields<KalarickalParams>{{{"w_exc_1", &KalarickalParams::w_exc_1},
                                    {"w_exc_2", &KalarickalParams::w_exc_2},
                                    {"w_inh_12", &KalarickalParams::w_inh_12},
                                    {"w_inh_21", &KalarickalParams::w_inh_21},
                                    {"c1", &KalarickalParams::c1},
                                    {"c2", &KalarickalParams::c2},
                                    {"c3", &KalarickalParams::c3},
                                    {"p", &KalarickalParams::p},
                                    {"m", &KalarickalParams::m}}};

// Assign a parameter by field name; throws ConfigError on an unknown name.
void set_param(ModelInstance& m, std::string_view name, double value);

// The model's cross-inhibition knob: g for Wilson, beta for the Laing-Chow
// family, both inhibitory weights for Kalarickal.
void set_cross_inhibition(ModelInstance& m, double value);

}  // namespace rivalry
