#include "rais/mdp.hpp"

#include <string>

namespace rais {

GaussianSpec AdversarialMdp::nominal_gaussian(const State&) const {
  throw std::logic_error("nominal_gaussian: environment has no Gaussian nominal model");
}

Trajectory rollout(const AdversarialMdp& env, const ProposalPolicy& proposal, Rng& rng,
                   int proposal_index) {
  const int horizon = env.horizon();
  Trajectory traj;
  traj.proposal_index = proposal_index;
  traj.states.reserve(static_cast<std::size_t>(horizon) + 1);
  traj.actions.reserve(static_cast<std::size_t>(horizon));
  traj.nominal_logps.reserve(static_cast<std::size_t>(horizon));
  traj.proposal_logps.reserve(static_cast<std::size_t>(horizon));

  State s = env.initial_state();
  traj.states.push_back(s);
  for (int t = 0; t < horizon; ++t) {
    const Action a = proposal.sample(s, rng);
    traj.actions.push_back(a);
    traj.nominal_logps.push_back(env.nominal_logprob(s, a));
    traj.proposal_logps.push_back(proposal.log_prob(s, a));

    auto [next, terminal] = env.step(s, a);
    if (!next.is_finite()) {
      throw NumericalError("rollout: non-finite state at step " + std::to_string(t + 1));
    }
    traj.states.push_back(next);
    s = next;
    if (terminal) break;
  }
  traj.ret = env.terminal_return(s);
  return traj;
}

}  // namespace rais
