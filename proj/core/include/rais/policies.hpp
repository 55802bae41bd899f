#pragma once

#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "rais/heads.hpp"
#include "rais/mdp.hpp"
#include "rais/mlp.hpp"
#include "rais/quadrature.hpp"

namespace rais {

// State-conditional proposal backed by a small network: categorical head for
// discrete action spaces, diagonal Gaussian head (dimension 1 for the
// shipped environments) for continuous ones.
class NetworkProposal final : public ProposalPolicy {
 public:
  NetworkProposal(const AdversarialMdp& env, Rng& init_rng, double prob_floor = 1e-3);

  Action sample(const State& s, Rng& rng) const override;
  double log_prob(const State& s, const Action& a) const override;

  bool is_discrete() const { return std::holds_alternative<CategoricalHead>(head_); }
  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }
  int param_count() const { return net_.param_count(); }

  // grad += coeff * d log q(a|s) / d params, action held fixed.
  void accumulate_score_grad(Mlp::Workspace& ws, const State& s, const Action& a,
                             double coeff, std::span<double> grad) const;

  // Continuous head only: reparameterized draw and the pathwise gradient of
  // its own log-density (derivative flows through the action).
  Action rsample(const State& s, double xi) const;
  void accumulate_rsample_grad(Mlp::Workspace& ws, const State& s, double xi, double coeff,
                               std::span<double> grad) const;

  // Sets the log-std output bias so the freshly initialized policy matches a
  // target standard deviation (continuous head only).
  void init_logstd_bias(double log_std);

  // Mean action of the head at a state (continuous head only); used for
  // mode-specialization diagnostics.
  double mean_action(const State& s) const;

 private:
  void features(const State& s, std::span<double> out) const;
  void outputs(const State& s, std::span<double> out) const;

  const AdversarialMdp* env_;
  Mlp net_;
  std::variant<CategoricalHead, GaussianHead> head_;
  std::vector<double> support_;  // discrete action values
};

// State-independent proposal fitted by the cross-entropy method: a single
// categorical row or Gaussian applied at every step.
class StateFreeProposal final : public ProposalPolicy {
 public:
  static StateFreeProposal categorical(const AdversarialMdp& env, std::vector<double> probs);
  static StateFreeProposal gaussian(double mean, double stddev);
  // Starts at the environment's (state-independent) nominal distribution.
  static StateFreeProposal nominal_like(const AdversarialMdp& env);

  Action sample(const State& s, Rng& rng) const override;
  double log_prob(const State& s, const Action& a) const override;

  bool is_discrete() const { return !support_.empty(); }
  std::span<const double> probs() const { return probs_; }
  void set_probs(std::vector<double> probs);
  double mean() const { return mean_; }
  double stddev() const { return stddev_; }
  void set_gaussian(double mean, double stddev);

 private:
  StateFreeProposal() = default;

  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> logps_;
  double mean_ = 0.0;
  double stddev_ = 1.0;
};

// Action-value model Q(s, a). Discrete environments get one output per
// support action; continuous ones take the action as an extra input.
class QNetwork {
 public:
  QNetwork(const AdversarialMdp& env, Rng& init_rng);

  bool is_discrete() const { return num_actions_ > 0; }
  int num_actions() const { return num_actions_; }

  double value(const State& s, const Action& a) const;
  void values(const State& s, std::span<double> out) const;  // discrete only
  double value_at(const State& s, double action_value) const;  // continuous only

  // E_{a ~ pi(.|s)}[Q(s, a)], exact over the discrete support or by
  // Gauss-Hermite quadrature against the Gaussian nominal.
  double nominal_expectation(const State& s, const GaussHermite& quad) const;

  void accumulate_value_grad(Mlp::Workspace& ws, const State& s, const Action& a,
                             double d_value, std::span<double> grad) const;

  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }
  const AdversarialMdp& env() const { return *env_; }

 private:
  void input_for(const State& s, double action_value, std::span<double> out) const;

  const AdversarialMdp* env_;
  Mlp net_;
  int num_actions_ = 0;  // 0 for continuous
  std::vector<double> support_;
};

// Scalar state-value model, used for the policy-gradient baseline and for
// pretraining targets.
class ValueNetwork {
 public:
  ValueNetwork(const AdversarialMdp& env, Rng& init_rng);

  double value(const State& s) const;
  void accumulate_value_grad(Mlp::Workspace& ws, const State& s, double d_value,
                             std::span<double> grad) const;

  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }

 private:
  const AdversarialMdp* env_;
  Mlp net_;
};

// Discrete acting proposal induced by a Q model:
//   q(a|s) = max(Q(s,a), 0) * pi(a|s) / V(s),  V(s) = sum_a pi(a|s) max(Q,0),
// floored and renormalized. States where V(s) falls below v_floor act with
// the nominal distribution.
class ValueActingProposal final : public ProposalPolicy {
 public:
  ValueActingProposal(const AdversarialMdp& env, const QNetwork& q, double v_floor = 1e-12,
                      double prob_floor = 1e-3);

  Action sample(const State& s, Rng& rng) const override;
  double log_prob(const State& s, const Action& a) const override;

  void action_probs(const State& s, std::span<double> out) const;

 private:
  const AdversarialMdp* env_;
  const QNetwork* q_;
  double v_floor_;
  double prob_floor_;
  std::vector<double> support_;
};

}  // namespace rais
