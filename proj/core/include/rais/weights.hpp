#pragma once

#include <span>

#include "rais/mdp.hpp"

namespace rais {

// log(sum(exp(x))) guarded against empty input and -inf entries.
double log_sum_exp(std::span<const double> xs);

// Sequential importance weight in log space: sum of nominal log-densities
// minus sum of proposal log-densities. Transition terms cancel, so the
// weight depends only on the two stored sequences.
double importance_log_weight(const Trajectory& traj);

// exp of the above; throws WeightOverflowError if the result is infinite.
double importance_weight(const Trajectory& traj);

// Partial importance weight through steps 1..k-1 (log space). k = 1 is the
// empty product; k = T+1 equals the full weight.
double partial_log_weight(const Trajectory& traj, int k);
double partial_weight(const Trajectory& traj, int k);

// Trajectory-level action log-density of a policy: sum over steps of
// log q(a_t | s_{t-1}).
double trajectory_log_density(const Trajectory& traj, const ProposalPolicy& policy);

// Deterministic-mixture weight in log space:
//   log p(tau) - log((1/M) sum_m q_m(tau))
// evaluated per-step under every member via log-sum-exp. Throws
// InvalidSupportError if all member densities vanish.
double dm_log_weight(const Trajectory& traj,
                     std::span<const ProposalPolicy* const> members);
double dm_weight(const Trajectory& traj, std::span<const ProposalPolicy* const> members);

// Number of Monte Carlo samples needed for coefficient of variation below
// eps_rel: ceil((1 - mu) / (mu * eps_rel^2)).
long long required_samples(double mu, double eps_rel);

}  // namespace rais
