#pragma once

#include <array>
#include <span>

#include "rais/mdp.hpp"

namespace rais {

enum class DisturbanceKind { kDiscrete, kContinuous };

// Angular-velocity update. kPaper applies the time step to the torque term
// only, matching the printed transition; kStandard applies it to the
// gravity term as well (the usual discretization). Ground-truth calibration
// arbitrates which one reproduces the published failure rates.
enum class DynamicsForm { kPaper, kStandard };

struct PendulumParams {
  DisturbanceKind disturbance = DisturbanceKind::kDiscrete;
  DynamicsForm dynamics = DynamicsForm::kPaper;

  // Failure threshold on max |theta| over the episode.
  double gamma_fail = 0.7853981633974483;  // pi/4

  // Continuous disturbances are N(0, continuous_std^2).
  double continuous_std = 0.4;

  double gravity = 10.0;
  double length = 1.0;
  double mass = 1.0;
  double dt = 0.05;
  int horizon = 20;
  double omega_max = 8.0;
  double torque_max = 2.0;
};

// Discrete disturbance support and probabilities. The printed probabilities
// sum to 1.002 and are renormalized by their sum.
constexpr std::array<double, 5> kDiscreteTorques{-1.0, -0.25, 0.0, 0.25, 1.0};
constexpr std::array<double, 5> kDiscreteTorqueWeights{0.016, 0.30, 0.37, 0.30, 0.016};

// Rule-based balancing torque, clipped to |a| <= torque_max.
double controller_torque(double theta, double omega, double torque_max = 2.0);

// Inverted pendulum under additive disturbance torques. State is
// [step, theta, omega, running max |theta|]; the running maximum makes the
// risk return sparse (carried entirely by the terminal state).
class PendulumEnv final : public AdversarialMdp {
 public:
  explicit PendulumEnv(PendulumParams params = {});

  State initial_state() const override;
  std::pair<State, bool> step(const State& s, const Action& a) const override;
  double terminal_return(const State& s) const override;
  int horizon() const override { return params_.horizon; }
  const ActionKind& action_kind() const override { return kind_; }
  Action nominal_sample(const State& s, Rng& rng) const override;
  double nominal_logprob(const State& s, const Action& a) const override;
  int feature_dim() const override { return 3; }
  void encode_features(const State& s, std::span<double> out) const override;
  GaussianSpec nominal_gaussian(const State& s) const override;

  const PendulumParams& params() const { return params_; }
  std::span<const double> discrete_probs() const { return discrete_probs_; }

  static int step_of(const State& s) { return static_cast<int>(s[0]); }
  static double theta_of(const State& s) { return s[1]; }
  static double omega_of(const State& s) { return s[2]; }
  static double max_abs_theta_of(const State& s) { return s[3]; }

 private:
  PendulumParams params_;
  ActionKind kind_;
  std::array<double, 5> discrete_probs_{};   // renormalized
  std::array<double, 5> discrete_logps_{};
};

}  // namespace rais
