#pragma once

#include <array>
#include <vector>

#include "rais/mdp.hpp"

namespace rais {

// Tiny enumerable MDP: at each of `horizon` steps one of three actions is
// taken and its index is added to an integer accumulator; the terminal
// return is 1 when the accumulator reaches `threshold`. Small enough that
// mu, Q and the optimal proposal are computable exactly, which makes it the
// ground-truth oracle for estimator tests.
struct ChainParams {
  int horizon = 5;
  std::array<double, 3> action_probs{0.8, 0.15, 0.05};
  int threshold = 8;
};

class ChainMdp final : public AdversarialMdp {
 public:
  explicit ChainMdp(ChainParams params = {});

  State initial_state() const override;
  std::pair<State, bool> step(const State& s, const Action& a) const override;
  double terminal_return(const State& s) const override;
  int horizon() const override { return params_.horizon; }
  const ActionKind& action_kind() const override { return kind_; }
  Action nominal_sample(const State& s, Rng& rng) const override;
  double nominal_logprob(const State& s, const Action& a) const override;
  int feature_dim() const override { return 2; }
  void encode_features(const State& s, std::span<double> out) const override;

  const ChainParams& params() const { return params_; }

  static int step_of(const State& s) { return static_cast<int>(s[0]); }
  static int accumulator_of(const State& s) { return static_cast<int>(s[1]); }

 private:
  ChainParams params_;
  ActionKind kind_;
};

// Exact quantities computed by backward induction over the chain, indexed
// by (step, accumulator).
struct ExactTables {
  int horizon = 0;
  double gamma = 0.5;
  double mu = 0.0;
  // v[step][acc] for step 0..T; q/qstar[step][acc][action] for step 0..T-1.
  std::vector<std::vector<double>> v;
  std::vector<std::vector<std::array<double, 3>>> q;
  std::vector<std::vector<std::array<double, 3>>> qstar;

  double value(int step, int acc) const { return v[step][acc]; }
  double action_value(int step, int acc, int action) const { return q[step][acc][action]; }

  // q*(.|s) row; throws UndefinedProposalError where V(s) = 0.
  const std::array<double, 3>& optimal_proposal(int step, int acc) const;
};

// Exact mu = sum over all trajectories of p(tau) * 1{R(tau) > gamma}, by
// direct enumeration of the 3^T action sequences. Throws CapacityError when
// the trajectory count exceeds ~1e6.
double enumerate_mu(const ChainMdp& env, double gamma);

// Q^pi / V^pi / q* tables by backward induction over the sparse indicator
// return; tables.mu is V at the initial state.
ExactTables exact_q(const ChainMdp& env, double gamma);

// Zero-variance proposal backed by the oracle tables. Sampling or scoring
// at a state with V(s) = 0 throws UndefinedProposalError.
class OptimalChainProposal final : public ProposalPolicy {
 public:
  OptimalChainProposal(const ChainMdp& env, ExactTables tables);

  Action sample(const State& s, Rng& rng) const override;
  double log_prob(const State& s, const Action& a) const override;

  const ExactTables& tables() const { return tables_; }

 private:
  const ChainMdp* env_;
  ExactTables tables_;
};

}  // namespace rais
