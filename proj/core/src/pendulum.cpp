#include "rais/pendulum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace rais {

namespace {
constexpr double kPi = std::numbers::pi;

double clip(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double gaussian_logpdf(double x, double mean, double stddev) {
  const double z = (x - mean) / stddev;
  return -0.5 * z * z - std::log(stddev) - 0.5 * std::log(2.0 * kPi);
}
}  // namespace

double controller_torque(double theta, double omega, double torque_max) {
  const double omega_target = sign(theta) * std::sqrt(60.0 * (1.0 - std::cos(theta)));
  const double a = -2.0 * omega + (omega - omega_target);
  return clip(a, -torque_max, torque_max);
}

PendulumEnv::PendulumEnv(PendulumParams params) : params_(params) {
  if (params_.disturbance == DisturbanceKind::kDiscrete) {
    kind_ = DiscreteActions{{kDiscreteTorques.begin(), kDiscreteTorques.end()}};
    const double total =
        std::accumulate(kDiscreteTorqueWeights.begin(), kDiscreteTorqueWeights.end(), 0.0);
    for (std::size_t i = 0; i < discrete_probs_.size(); ++i) {
      discrete_probs_[i] = kDiscreteTorqueWeights[i] / total;
      discrete_logps_[i] = std::log(discrete_probs_[i]);
    }
  } else {
    kind_ = ContinuousActions{1};
  }
}

State PendulumEnv::initial_state() const {
  State s;
  s.dim = 4;
  s[0] = 0.0;  // step
  s[1] = 0.0;  // theta
  s[2] = 0.0;  // omega
  s[3] = 0.0;  // running max |theta|
  return s;
}

std::pair<State, bool> PendulumEnv::step(const State& s, const Action& a) const {
  const double theta = theta_of(s);
  const double omega = omega_of(s);

  const double ctrl = controller_torque(theta, omega, params_.torque_max);
  // Disturbance is exogenous to the actuator limit: added after clipping,
  // total not re-clipped.
  const double torque = ctrl + a.value;

  const double grav = 3.0 * params_.gravity / (2.0 * params_.length) * std::sin(theta + kPi);
  const double tdot = 3.0 * torque / (params_.mass * params_.length * params_.length);

  const double theta_next = theta + omega * params_.dt;
  double omega_next;
  if (params_.dynamics == DynamicsForm::kPaper) {
    omega_next = omega - grav + tdot * params_.dt;
  } else {
    omega_next = omega + (-grav + tdot) * params_.dt;
  }
  omega_next = clip(omega_next, -params_.omega_max, params_.omega_max);

  State next;
  next.dim = 4;
  next[0] = s[0] + 1.0;
  next[1] = theta_next;
  next[2] = omega_next;
  next[3] = std::max(max_abs_theta_of(s), std::abs(theta_next));
  return {next, step_of(next) >= params_.horizon};
}

double PendulumEnv::terminal_return(const State& s) const { return max_abs_theta_of(s); }

Action PendulumEnv::nominal_sample(const State&, Rng& rng) const {
  if (params_.disturbance == DisturbanceKind::kDiscrete) {
    const int idx = sample_categorical(discrete_probs_, rng);
    return Action::discrete(idx, kDiscreteTorques[static_cast<std::size_t>(idx)]);
  }
  return Action::continuous(params_.continuous_std * standard_normal(rng));
}

double PendulumEnv::nominal_logprob(const State&, const Action& a) const {
  if (params_.disturbance == DisturbanceKind::kDiscrete) {
    if (a.index < 0 || a.index >= static_cast<int>(kDiscreteTorques.size())) {
      throw InvalidActionError("PendulumEnv::nominal_logprob: torque index " +
                               std::to_string(a.index) + " outside support");
    }
    return discrete_logps_[static_cast<std::size_t>(a.index)];
  }
  return gaussian_logpdf(a.value, 0.0, params_.continuous_std);
}

void PendulumEnv::encode_features(const State& s, std::span<double> out) const {
  out[0] = s[0] / static_cast<double>(params_.horizon);
  out[1] = theta_of(s);
  out[2] = omega_of(s) / params_.omega_max;
}

GaussianSpec PendulumEnv::nominal_gaussian(const State&) const {
  if (params_.disturbance != DisturbanceKind::kContinuous) {
    throw std::logic_error("nominal_gaussian: discrete disturbance model");
  }
  return GaussianSpec{0.0, params_.continuous_std};
}

}  // namespace rais
