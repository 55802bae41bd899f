#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "rais/errors.hpp"
#include "rais/rng.hpp"

namespace rais {

// Environment state: a small fixed-capacity numeric vector. Both shipped
// environments fit in four slots.
struct State {
  static constexpr int kMaxDim = 4;

  std::array<double, kMaxDim> v{};
  int dim = 0;

  double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }

  bool is_finite() const {
    for (int i = 0; i < dim; ++i) {
      if (!std::isfinite(v[static_cast<std::size_t>(i)])) return false;
    }
    return true;
  }
};

// A single environment action. Discrete actions carry their support index
// and numeric value; continuous actions use the value alone (index -1).
struct Action {
  int index = -1;
  double value = 0.0;

  static Action discrete(int index, double value) { return Action{index, value}; }
  static Action continuous(double value) { return Action{-1, value}; }
};

struct DiscreteActions {
  std::vector<double> values;  // support, ordered

  int size() const { return static_cast<int>(values.size()); }
};

struct ContinuousActions {
  int dim = 1;
};

using ActionKind = std::variant<DiscreteActions, ContinuousActions>;

inline bool is_discrete(const ActionKind& kind) {
  return std::holds_alternative<DiscreteActions>(kind);
}

// Parameters of a Gaussian nominal action model, exposed by continuous
// environments so value-based targets can integrate against it exactly.
struct GaussianSpec {
  double mean = 0.0;
  double stddev = 1.0;
};

// Episodic environment with a known nominal action density pi(a|s), a
// deterministic transition given the action, and a sparse terminal risk
// return. The actions are the controllable stochasticity of the system
// under evaluation.
class AdversarialMdp {
 public:
  virtual ~AdversarialMdp() = default;

  virtual State initial_state() const = 0;

  // Pure function of (state, action): identical inputs yield identical
  // outputs. Returns the next state and whether it is terminal.
  virtual std::pair<State, bool> step(const State& s, const Action& a) const = 0;

  // Risk value R(tau); nonzero only at terminal states.
  virtual double terminal_return(const State& s) const = 0;

  virtual int horizon() const = 0;
  virtual const ActionKind& action_kind() const = 0;

  virtual Action nominal_sample(const State& s, Rng& rng) const = 0;
  virtual double nominal_logprob(const State& s, const Action& a) const = 0;

  // Network input encoding of a state.
  virtual int feature_dim() const = 0;
  virtual void encode_features(const State& s, std::span<double> out) const = 0;

  // Only meaningful for continuous-action environments with a Gaussian
  // nominal model.
  virtual GaussianSpec nominal_gaussian(const State& s) const;
};

// State-conditional action distribution used to generate rollouts.
class ProposalPolicy {
 public:
  virtual ~ProposalPolicy() = default;

  virtual Action sample(const State& s, Rng& rng) const = 0;
  virtual double log_prob(const State& s, const Action& a) const = 0;
};

// Rolled-out episode. actions[i] is taken from states[i] and leads to
// states[i+1]; the two log-density sequences align with actions.
struct Trajectory {
  std::vector<State> states;
  std::vector<Action> actions;
  std::vector<double> nominal_logps;
  std::vector<double> proposal_logps;
  int proposal_index = 0;
  double ret = 0.0;

  int length() const { return static_cast<int>(actions.size()); }
};

// Per-trajectory record accumulated into the dataset D behind the final
// estimate. Weights live in log space until estimate time.
struct SampleRecord {
  double ret = 0.0;
  double log_weight = 0.0;
  int proposal_index = 0;

  double weight() const { return std::exp(log_weight); }
};

// Rolls one episode, drawing every action from the proposal and recording
// both log-density sequences. Throws NumericalError if a non-finite state
// is produced.
Trajectory rollout(const AdversarialMdp& env, const ProposalPolicy& proposal, Rng& rng,
                   int proposal_index = 0);

// Proposal that reproduces the environment's nominal action model; rollouts
// under it carry importance weight exactly 1.
class NominalProposal final : public ProposalPolicy {
 public:
  explicit NominalProposal(const AdversarialMdp& env) : env_(&env) {}

  Action sample(const State& s, Rng& rng) const override {
    return env_->nominal_sample(s, rng);
  }
  double log_prob(const State& s, const Action& a) const override {
    return env_->nominal_logprob(s, a);
  }

 private:
  const AdversarialMdp* env_;
};

}  // namespace rais
