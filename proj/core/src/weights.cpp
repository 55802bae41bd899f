#include "rais/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rais {

double log_sum_exp(std::span<const double> xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(xs.begin(), xs.end());
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (double x : xs) sum += std::exp(x - m);
  return m + std::log(sum);
}

double importance_log_weight(const Trajectory& traj) {
  double logw = 0.0;
  for (std::size_t t = 0; t < traj.actions.size(); ++t) {
    logw += traj.nominal_logps[t] - traj.proposal_logps[t];
  }
  return logw;
}

double importance_weight(const Trajectory& traj) {
  const double logw = importance_log_weight(traj);
  const double w = std::exp(logw);
  if (std::isinf(w)) {
    throw WeightOverflowError("importance_weight: exp overflow", logw);
  }
  return w;
}

double partial_log_weight(const Trajectory& traj, int k) {
  const int T = traj.length();
  if (k < 1 || k > T + 1) {
    throw std::invalid_argument("partial_log_weight: k out of range [1, T+1]");
  }
  double logw = 0.0;
  for (int t = 0; t < k - 1; ++t) {
    logw += traj.nominal_logps[static_cast<std::size_t>(t)] -
            traj.proposal_logps[static_cast<std::size_t>(t)];
  }
  return logw;
}

double partial_weight(const Trajectory& traj, int k) {
  return std::exp(partial_log_weight(traj, k));
}

double trajectory_log_density(const Trajectory& traj, const ProposalPolicy& policy) {
  double logq = 0.0;
  for (std::size_t t = 0; t < traj.actions.size(); ++t) {
    logq += policy.log_prob(traj.states[t], traj.actions[t]);
  }
  return logq;
}

double dm_log_weight(const Trajectory& traj,
                     std::span<const ProposalPolicy* const> members) {
  if (members.empty()) throw std::invalid_argument("dm_log_weight: empty mixture");
  double logp = std::accumulate(traj.nominal_logps.begin(), traj.nominal_logps.end(), 0.0);
  std::vector<double> member_logqs(members.size());
  for (std::size_t m = 0; m < members.size(); ++m) {
    member_logqs[m] = trajectory_log_density(traj, *members[m]);
  }
  const double log_mix =
      log_sum_exp(member_logqs) - std::log(static_cast<double>(members.size()));
  if (!std::isfinite(log_mix)) {
    throw InvalidSupportError("dm_log_weight: zero density under every mixture member");
  }
  return logp - log_mix;
}

double dm_weight(const Trajectory& traj, std::span<const ProposalPolicy* const> members) {
  const double logw = dm_log_weight(traj, members);
  const double w = std::exp(logw);
  if (std::isinf(w)) throw WeightOverflowError("dm_weight: exp overflow", logw);
  return w;
}

long long required_samples(double mu, double eps_rel) {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw std::invalid_argument("required_samples: mu must lie in (0, 1)");
  }
  if (!(eps_rel > 0.0)) {
    throw std::invalid_argument("required_samples: eps_rel must be positive");
  }
  return static_cast<long long>(std::ceil((1.0 - mu) / (mu * eps_rel * eps_rel)));
}

}  // namespace rais
