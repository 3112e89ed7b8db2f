#include "rivalry/models.hpp"

#include <cmath>
#include <sstream>

namespace rivalry {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "parameter " << name << " must be > 0, got " << v;
    throw ConfigError(os.str());
  }
}

void expect_size(const StateVector& s, std::size_t n, const char* model) {
  if (s.size() != n) {
    std::ostringstream os;
    os << model << " state must have " << n << " entries, got " << s.size();
    throw ConfigError(os.str());
  }
}

}  // namespace

void WilsonParams::validate() const {
  require_positive(g, "g");
  require_positive(h, "h");
  require_positive(tau_e, "tau_e");
  require_positive(tau_h, "tau_h");
  require_positive(tau_i, "tau_i");
}

void LaingChowParams::validate() const {
  require_positive(alpha, "alpha");
  require_positive(beta, "beta");
  require_positive(phi_a, "phi_a");
  require_positive(phi_d, "phi_d");
  require_positive(tau_a, "tau_a");
  require_positive(tau_d, "tau_d");
  require_positive(tau_u, "tau_u");
}

void LCAdaptationParams::validate() const {
  require_positive(beta, "beta");
  require_positive(g, "g");
  require_positive(tau_a, "tau_a");
  require_positive(tau_u, "tau_u");
  require_positive(k, "k");
  require_positive(theta, "theta");
}

void LCDepressionParams::validate() const {
  require_positive(beta, "beta");
  require_positive(gamma, "gamma");
  require_positive(tau_d, "tau_d");
  require_positive(tau_u, "tau_u");
  require_positive(k, "k");
  require_positive(theta, "theta");
}

void KalarickalParams::validate() const {
  require_positive(w_exc_1, "w_exc_1");
  require_positive(w_exc_2, "w_exc_2");
  require_positive(w_inh_12, "w_inh_12");
  require_positive(w_inh_21, "w_inh_21");
  require_positive(c1, "c1");
  require_positive(c2, "c2");
  require_positive(c3, "c3");
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError("parameter p must lie in [0, 1]");
  if (!(m >= 0.0)) throw ConfigError("parameter m must be >= 0");
}

void Stimulus::validate() const {
  if (!(s1 >= 0.0) || !(s2 >= 0.0))
    throw ConfigError("stimulus strengths must be >= 0");
}

// ---------------------------------------------------------------------------

double naka_rushton(double x, double adaptation) {
  const double xp = x > 0.0 ? x : 0.0;
  const double semi = 10.0 + adaptation;
  return 100.0 * xp * xp / (semi * semi + xp * xp);
}

double heaviside(double x) { return x >= 0.0 ? 1.0 : 0.0; }

double sigmoid(double x, double k, double theta) {
  return 1.0 / (1.0 + std::exp(-(x - theta) / k));
}

// ---------------------------------------------------------------------------
// Each RHS evaluates both populations through the same code path, so
// index-swap symmetry holds bitwise for symmetric parameters.

StateVector rhs_wilson(const StateVector& s, const WilsonParams& p,
                       Stimulus stim) {
  expect_size(s, 6, "wilson");
  auto pop = [&p](double e, double h, double i_self, double i_other,
                  double v) {
    return std::array<double, 3>{
        (-e + naka_rushton(v - p.g * i_other, h)) / p.tau_e,
        (-h + p.h * e) / p.tau_h,
        (-i_self + e) / p.tau_i,
    };
  };
  const auto d1 = pop(s[0], s[1], s[2], s[5], stim.s1);
  const auto d2 = pop(s[3], s[4], s[5], s[2], stim.s2);
  return {d1[0], d1[1], d1[2], d2[0], d2[1], d2[2]};
}

StateVector rhs_laing_chow(const StateVector& s, const LaingChowParams& p,
                           Stimulus stim) {
  expect_size(s, 6, "laing-chow");
  // One gain evaluation feeds the u, a and g equations alike.
  auto pop = [&p](double u, double a, double g, double u_other, double g_other,
                  double input) {
    const double f =
        heaviside(p.alpha * u * g - p.beta * u_other * g_other - a + input);
    return std::array<double, 3>{
        (-u + f) / p.tau_u,
        (-a + p.phi_a * f) / p.tau_a,
        (1.0 - g - g * p.phi_d * f) / p.tau_d,
    };
  };
  const auto d1 = pop(s[0], s[1], s[2], s[3], s[5], stim.s1);
  const auto d2 = pop(s[3], s[4], s[5], s[0], s[2], stim.s2);
  return {d1[0], d1[1], d1[2], d2[0], d2[1], d2[2]};
}

StateVector rhs_lc_adaptation(const StateVector& s,
                              const LCAdaptationParams& p, Stimulus stim) {
  expect_size(s, 4, "lc-adaptation");
  auto pop = [&p](double u, double a, double u_other, double input) {
    const double f =
        sigmoid(-p.beta * u_other - p.g * a + input, p.k, p.theta);
    return std::array<double, 2>{(-u + f) / p.tau_u, (-a + u) / p.tau_a};
  };
  const auto d1 = pop(s[0], s[1], s[2], stim.s1);
  const auto d2 = pop(s[2], s[3], s[0], stim.s2);
  return {d1[0], d1[1], d2[0], d2[1]};
}

StateVector rhs_lc_depression(const StateVector& s,
                              const LCDepressionParams& p, Stimulus stim) {
  expect_size(s, 4, "lc-depression");
  auto pop = [&p](double u, double g, double u_other, double g_other,
                  double input) {
    const double f =
        sigmoid(-p.beta * u_other * g_other + input, p.k, p.theta);
    return std::array<double, 2>{
        (-u + f) / p.tau_u,
        (1.0 - g - p.gamma * u * g) / p.tau_d,
    };
  };
  const auto d1 = pop(s[0], s[1], s[2], s[3], stim.s1);
  const auto d2 = pop(s[2], s[3], s[0], s[1], stim.s2);
  return {d1[0], d1[1], d2[0], d2[1]};
}

StateVector rhs_kalarickal(const StateVector& s, const KalarickalParams& p,
                           Stimulus stim, NoisePair noise) {
  expect_size(s, 4, "kalarickal");
  auto relu = [](double x) { return x > 0.0 ? x : 0.0; };
  // y_in adapts the inhibitory pathway from the other neuron onto this one;
  // the noise kick enters the pathway equation, never the activity equation.
  auto pop = [&](double x, double y_in, double x_other, double w_plus,
                 double w_minus, double input, double b) {
    return std::array<double, 2>{
        -x + (1.0 - x) * w_plus * input -
            (p.c1 + x) * w_minus * y_in * relu(x_other),
        p.c2 * ((1.0 - y_in) - p.c3 * relu(x_other) * w_minus * y_in) + b,
    };
  };
  const auto d1 = pop(s[0], s[1], s[2], p.w_exc_1, p.w_inh_21, stim.s1,
                      noise.b21);
  const auto d2 = pop(s[2], s[3], s[0], p.w_exc_2, p.w_inh_12, stim.s2,
                      noise.b12);
  return {d1[0], d1[1], d2[0], d2[1]};
}

// ---------------------------------------------------------------------------

std::size_t ModelInstance::state_size() const {
  return rivalry::state_size(kind());
}

void ModelInstance::validate() const {
  std::visit([](const auto& p) { p.validate(); }, params);
}

ModelInstance default_params(ModelKind kind) {
  switch (kind) {
    case ModelKind::Wilson:
      return ModelInstance{WilsonParams{}, {}};
    case ModelKind::LaingChow:
      return ModelInstance{LaingChowParams{}, {}};
    case ModelKind::LCAdaptation:
      return ModelInstance{LCAdaptationParams{}, {}};
    case ModelKind::LCDepression:
      // gamma and tau_d are this library's choice, not literature values.
      return ModelInstance{LCDepressionParams{}, {{"implementer_default", true}}};
    case ModelKind::Kalarickal:
      return ModelInstance{KalarickalParams{}, {}};
  }
  throw ConfigError("unknown model kind");
}

StateVector rhs(const ModelInstance& m, const StateVector& s, Stimulus stim,
                NoisePair noise) {
  return std::visit(
      [&](const auto& p) -> StateVector {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, WilsonParams>)
          return rhs_wilson(s, p, stim);
        else if constexpr (std::is_same_v<P, LaingChowParams>)
          return rhs_laing_chow(s, p, stim);
        else if constexpr (std::is_same_v<P, LCAdaptationParams>)
          return rhs_lc_adaptation(s, p, stim);
        else if constexpr (std::is_same_v<P, LCDepressionParams>)
          return rhs_lc_depression(s, p, stim);
        else
          return rhs_kalarickal(s, p, stim, noise);
      },
      m.params);
}

namespace {
constexpr const char* kWilsonLabels[] = {"E1", "H1", "I1", "E2", "H2", "I2"};
constexpr const char* kLaingChowLabels[] = {"u1", "a1", "g1",
                                            "u2", "a2", "g2"};
constexpr const char* kLCAdaptationLabels[] = {"u1", "a1", "u2", "a2"};
constexpr const char* kLCDepressionLabels[] = {"u1", "g1", "u2", "g2"};
constexpr const char* kKalarickalLabels[] = {"x1", "y21", "x2", "y12"};
}  // namespace

std::span<const char* const> state_labels(ModelKind kind) {
  switch (kind) {
    case ModelKind::Wilson:
      return kWilsonLabels;
    case ModelKind::LaingChow:
      return kLaingChowLabels;
    case ModelKind::LCAdaptation:
      return kLCAdaptationLabels;
    case ModelKind::LCDepression:
      return kLCDepressionLabels;
    case ModelKind::Kalarickal:
      return kKalarickalLabels;
  }
  throw ConfigError("unknown model kind");
}

std::size_t state_size(ModelKind kind) { return state_labels(kind).size(); }

ActivityChannels activity_channels(ModelKind kind) {
  switch (kind) {
    case ModelKind::Wilson:
      return {0, 3, 100.0};  // E1, E2
    case ModelKind::LaingChow:
      return {0, 3, 1.0};  // u1, u2
    case ModelKind::LCAdaptation:
    case ModelKind::LCDepression:
      return {0, 2, 1.0};  // u1, u2
    case ModelKind::Kalarickal:
      return {0, 2, 1.0};  // x1, x2
  }
  throw ConfigError("unknown model kind");
}

const char* model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Wilson:
      return "wilson";
    case ModelKind::LaingChow:
      return "laing-chow";
    case ModelKind::LCAdaptation:
      return "lc-adaptation";
    case ModelKind::LCDepression:
      return "lc-depression";
    case ModelKind::Kalarickal:
      return "kalarickal";
  }
  throw ConfigError("unknown model kind");
}

std::optional<ModelKind> model_kind_from_name(std::string_view name) {
  for (ModelKind k :
       {ModelKind::Wilson, ModelKind::LaingChow, ModelKind::LCAdaptation,
        ModelKind::LCDepression, ModelKind::Kalarickal}) {
    if (name == model_name(k)) return k;
  }
  return std::nullopt;
}

void set_param(ModelInstance& m, std::string_view name, double value) {
  const bool found = std::visit(
      [&](auto& p) {
        using P = std::decay_t<decltype(p)>;
        for (const auto& f : param_fields<P>) {
          if (name == f.name) {
            p.*(f.member) = value;
            return true;
          }
        }
        return false;
      },
      m.params);
  if (!found) {
    std::ostringstream os;
    os << "model " << model_name(m.kind()) << " has no parameter named '"
       << name << "'";
    throw ConfigError(os.str());
  }
}

void set_cross_inhibition(ModelInstance& m, double value) {
  switch (m.kind()) {
    case ModelKind::Wilson:
      set_param(m, "g", value);
      break;
    case ModelKind::LaingChow:
    case ModelKind::LCAdaptation:
    case ModelKind::LCDepression:
      set_param(m, "beta", value);
      break;
    case ModelKind::Kalarickal:
      set_param(m, "w_inh_12", value);
      set_param(m, "w_inh_21", value);
      break;
  }
}

}  // namespace rivalry
