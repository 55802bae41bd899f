#include "rais/chain.hpp"

#include <cmath>
#include <string>

namespace rais {

namespace {
constexpr long long kMaxEnumeration = 1000000;

long long pow3(int n) {
  long long r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}
}  // namespace

ChainMdp::ChainMdp(ChainParams params) : params_(params) {
  kind_ = DiscreteActions{{0.0, 1.0, 2.0}};
}

State ChainMdp::initial_state() const {
  State s;
  s.dim = 2;
  s[0] = 0.0;
  s[1] = 0.0;
  return s;
}

std::pair<State, bool> ChainMdp::step(const State& s, const Action& a) const {
  if (a.index < 0 || a.index > 2) {
    throw InvalidActionError("ChainMdp::step: action index " + std::to_string(a.index));
  }
  State next = s;
  next[0] = s[0] + 1.0;
  next[1] = s[1] + static_cast<double>(a.index);
  return {next, step_of(next) >= params_.horizon};
}

double ChainMdp::terminal_return(const State& s) const {
  return accumulator_of(s) >= params_.threshold ? 1.0 : 0.0;
}

Action ChainMdp::nominal_sample(const State&, Rng& rng) const {
  const int idx = sample_categorical(params_.action_probs, rng);
  return Action::discrete(idx, static_cast<double>(idx));
}

double ChainMdp::nominal_logprob(const State&, const Action& a) const {
  if (a.index < 0 || a.index > 2) {
    throw InvalidActionError("ChainMdp::nominal_logprob: action index " +
                             std::to_string(a.index));
  }
  return std::log(params_.action_probs[static_cast<std::size_t>(a.index)]);
}

void ChainMdp::encode_features(const State& s, std::span<double> out) const {
  out[0] = s[0] / static_cast<double>(params_.horizon);
  out[1] = s[1] / static_cast<double>(2 * params_.horizon);
}

const std::array<double, 3>& ExactTables::optimal_proposal(int step, int acc) const {
  if (!(v[static_cast<std::size_t>(step)][static_cast<std::size_t>(acc)] > 0.0)) {
    throw UndefinedProposalError("optimal_proposal: V(s) = 0 at step " +
                                 std::to_string(step) + ", acc " + std::to_string(acc));
  }
  return qstar[static_cast<std::size_t>(step)][static_cast<std::size_t>(acc)];
}

double enumerate_mu(const ChainMdp& env, double gamma) {
  const int T = env.params().horizon;
  if (pow3(T) > kMaxEnumeration) {
    throw CapacityError("enumerate_mu: 3^" + std::to_string(T) + " trajectories");
  }
  const auto& probs = env.params().action_probs;
  std::vector<int> seq(static_cast<std::size_t>(T), 0);
  double mu = 0.0;
  while (true) {
    double p = 1.0;
    int acc = 0;
    for (int t = 0; t < T; ++t) {
      p *= probs[static_cast<std::size_t>(seq[static_cast<std::size_t>(t)])];
      acc += seq[static_cast<std::size_t>(t)];
    }
    const double ret = acc >= env.params().threshold ? 1.0 : 0.0;
    if (ret > gamma) mu += p;

    // odometer increment
    int pos = 0;
    while (pos < T && seq[static_cast<std::size_t>(pos)] == 2) {
      seq[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == T) break;
    ++seq[static_cast<std::size_t>(pos)];
  }
  return mu;
}

ExactTables exact_q(const ChainMdp& env, double gamma) {
  const int T = env.params().horizon;
  if (pow3(T) > kMaxEnumeration) {
    throw CapacityError("exact_q: 3^" + std::to_string(T) + " trajectories");
  }
  const auto& probs = env.params().action_probs;

  ExactTables tables;
  tables.horizon = T;
  tables.gamma = gamma;
  tables.v.resize(static_cast<std::size_t>(T) + 1);
  tables.q.resize(static_cast<std::size_t>(T));
  tables.qstar.resize(static_cast<std::size_t>(T));
  for (int step = 0; step <= T; ++step) {
    tables.v[static_cast<std::size_t>(step)].assign(static_cast<std::size_t>(2 * step) + 1,
                                                    0.0);
  }
  for (int step = 0; step < T; ++step) {
    tables.q[static_cast<std::size_t>(step)].assign(static_cast<std::size_t>(2 * step) + 1,
                                                    {0.0, 0.0, 0.0});
    tables.qstar[static_cast<std::size_t>(step)].assign(
        static_cast<std::size_t>(2 * step) + 1, {0.0, 0.0, 0.0});
  }

  // Terminal layer: V = indicator of the sparse return exceeding gamma.
  for (int acc = 0; acc <= 2 * T; ++acc) {
    const double ret = acc >= env.params().threshold ? 1.0 : 0.0;
    tables.v[static_cast<std::size_t>(T)][static_cast<std::size_t>(acc)] =
        ret > gamma ? 1.0 : 0.0;
  }

  for (int step = T - 1; step >= 0; --step) {
    for (int acc = 0; acc <= 2 * step; ++acc) {
      double v = 0.0;
      for (int a = 0; a < 3; ++a) {
        const double qa =
            tables.v[static_cast<std::size_t>(step) + 1][static_cast<std::size_t>(acc + a)];
        tables.q[static_cast<std::size_t>(step)][static_cast<std::size_t>(acc)]
                [static_cast<std::size_t>(a)] = qa;
        v += probs[static_cast<std::size_t>(a)] * qa;
      }
      tables.v[static_cast<std::size_t>(step)][static_cast<std::size_t>(acc)] = v;
      if (v > 0.0) {
        for (int a = 0; a < 3; ++a) {
          tables.qstar[static_cast<std::size_t>(step)][static_cast<std::size_t>(acc)]
                      [static_cast<std::size_t>(a)] =
              tables.q[static_cast<std::size_t>(step)][static_cast<std::size_t>(acc)]
                      [static_cast<std::size_t>(a)] *
              probs[static_cast<std::size_t>(a)] / v;
        }
      }
    }
  }
  tables.mu = tables.v[0][0];
  return tables;
}

OptimalChainProposal::OptimalChainProposal(const ChainMdp& env, ExactTables tables)
    : env_(&env), tables_(std::move(tables)) {}

Action OptimalChainProposal::sample(const State& s, Rng& rng) const {
  const auto& row =
      tables_.optimal_proposal(ChainMdp::step_of(s), ChainMdp::accumulator_of(s));
  const int idx = sample_categorical(row, rng);
  return Action::discrete(idx, static_cast<double>(idx));
}

double OptimalChainProposal::log_prob(const State& s, const Action& a) const {
  if (a.index < 0 || a.index > 2) {
    throw InvalidActionError("OptimalChainProposal::log_prob: action index " +
                             std::to_string(a.index));
  }
  const auto& row =
      tables_.optimal_proposal(ChainMdp::step_of(s), ChainMdp::accumulator_of(s));
  return std::log(row[static_cast<std::size_t>(a.index)]);
}

}  // namespace rais
