#include "rais/policies.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rais {

namespace {
constexpr int kMaxFeatures = State::kMaxDim + 1;

std::vector<int> hidden_widths(int in, int out) { return {in, 32, 32, out}; }

const std::vector<double>& support_of(const AdversarialMdp& env) {
  return std::get<DiscreteActions>(env.action_kind()).values;
}
}  // namespace

NetworkProposal::NetworkProposal(const AdversarialMdp& env, Rng& init_rng,
                                 double prob_floor)
    : env_(&env),
      net_({1}),  // replaced below once the head shape is known
      head_(CategoricalHead(1)) {
  if (is_discrete(env.action_kind())) {
    support_ = support_of(env);
    head_ = CategoricalHead(static_cast<int>(support_.size()), prob_floor);
    net_ = Mlp(hidden_widths(env.feature_dim(), static_cast<int>(support_.size())));
  } else {
    head_ = GaussianHead(1);
    net_ = Mlp(hidden_widths(env.feature_dim(), 2));
  }
  net_.init_params(init_rng);
}

void NetworkProposal::features(const State& s, std::span<double> out) const {
  env_->encode_features(s, out);
}

void NetworkProposal::outputs(const State& s, std::span<double> out) const {
  double feat[kMaxFeatures];
  features(s, std::span<double>(feat, static_cast<std::size_t>(env_->feature_dim())));
  net_.forward(std::span<const double>(feat, static_cast<std::size_t>(env_->feature_dim())),
               out);
}

Action NetworkProposal::sample(const State& s, Rng& rng) const {
  double out[Mlp::kMaxWidth];
  outputs(s, std::span<double>(out, static_cast<std::size_t>(net_.output_dim())));
  if (const auto* cat = std::get_if<CategoricalHead>(&head_)) {
    const int idx = cat->sample(
        std::span<const double>(out, static_cast<std::size_t>(cat->num_actions())), rng);
    return Action::discrete(idx, support_[static_cast<std::size_t>(idx)]);
  }
  const auto& gauss = std::get<GaussianHead>(head_);
  double a[1];
  gauss.sample(std::span<const double>(out, 2), rng, a);
  return Action::continuous(a[0]);
}

double NetworkProposal::log_prob(const State& s, const Action& a) const {
  double out[Mlp::kMaxWidth];
  outputs(s, std::span<double>(out, static_cast<std::size_t>(net_.output_dim())));
  if (const auto* cat = std::get_if<CategoricalHead>(&head_)) {
    return cat->log_prob(
        std::span<const double>(out, static_cast<std::size_t>(cat->num_actions())),
        a.index);
  }
  const auto& gauss = std::get<GaussianHead>(head_);
  const double av[1] = {a.value};
  return gauss.log_prob(std::span<const double>(out, 2), std::span<const double>(av, 1));
}

void NetworkProposal::accumulate_score_grad(Mlp::Workspace& ws, const State& s,
                                            const Action& a, double coeff,
                                            std::span<double> grad) const {
  double feat[kMaxFeatures];
  features(s, std::span<double>(feat, static_cast<std::size_t>(env_->feature_dim())));
  double out[Mlp::kMaxWidth];
  const auto out_span =
      std::span<double>(out, static_cast<std::size_t>(net_.output_dim()));
  net_.forward_cached(
      std::span<const double>(feat, static_cast<std::size_t>(env_->feature_dim())), ws,
      out_span);

  double dout[Mlp::kMaxWidth];
  const auto dout_span =
      std::span<double>(dout, static_cast<std::size_t>(net_.output_dim()));
  if (const auto* cat = std::get_if<CategoricalHead>(&head_)) {
    cat->log_prob_grad(out_span, a.index, dout_span);
  } else {
    const auto& gauss = std::get<GaussianHead>(head_);
    const double av[1] = {a.value};
    gauss.log_prob_grad(out_span, std::span<const double>(av, 1), dout_span);
  }
  for (double& d : dout_span) d *= coeff;
  net_.backward(ws, dout_span, grad);
}

Action NetworkProposal::rsample(const State& s, double xi) const {
  const auto& gauss = std::get<GaussianHead>(head_);
  double out[Mlp::kMaxWidth];
  outputs(s, std::span<double>(out, 2));
  double a[1];
  const double xiv[1] = {xi};
  gauss.rsample(std::span<const double>(out, 2), std::span<const double>(xiv, 1), a);
  return Action::continuous(a[0]);
}

void NetworkProposal::accumulate_rsample_grad(Mlp::Workspace& ws, const State& s, double xi,
                                              double coeff, std::span<double> grad) const {
  const auto& gauss = std::get<GaussianHead>(head_);
  double feat[kMaxFeatures];
  features(s, std::span<double>(feat, static_cast<std::size_t>(env_->feature_dim())));
  double out[Mlp::kMaxWidth];
  const auto out_span = std::span<double>(out, 2);
  net_.forward_cached(
      std::span<const double>(feat, static_cast<std::size_t>(env_->feature_dim())), ws,
      out_span);

  double dout[2];
  const double xiv[1] = {xi};
  gauss.rsample_log_prob_grad(out_span, std::span<const double>(xiv, 1),
                              std::span<double>(dout, 2));
  dout[0] *= coeff;
  dout[1] *= coeff;
  net_.backward(ws, std::span<const double>(dout, 2), grad);
}

void NetworkProposal::init_logstd_bias(double log_std) {
  if (is_discrete()) {
    throw std::logic_error("init_logstd_bias: categorical head has no log-std");
  }
  // Output layer: weights [2 x 32] then biases [2]; slot 1 is the log-std.
  auto params = net_.params();
  params[params.size() - 1] = log_std;
}

double NetworkProposal::mean_action(const State& s) const {
  const auto& gauss = std::get<GaussianHead>(head_);
  double out[Mlp::kMaxWidth];
  outputs(s, std::span<double>(out, 2));
  return gauss.mean(std::span<const double>(out, 2), 0);
}

StateFreeProposal StateFreeProposal::categorical(const AdversarialMdp& env,
                                                 std::vector<double> probs) {
  StateFreeProposal p;
  p.support_ = support_of(env);
  if (probs.size() != p.support_.size()) {
    throw std::invalid_argument("StateFreeProposal: probability row size mismatch");
  }
  p.set_probs(std::move(probs));
  return p;
}

StateFreeProposal StateFreeProposal::gaussian(double mean, double stddev) {
  StateFreeProposal p;
  p.set_gaussian(mean, stddev);
  return p;
}

StateFreeProposal StateFreeProposal::nominal_like(const AdversarialMdp& env) {
  if (is_discrete(env.action_kind())) {
    const auto& support = support_of(env);
    std::vector<double> probs(support.size());
    const State s0 = env.initial_state();
    for (std::size_t i = 0; i < support.size(); ++i) {
      probs[i] = std::exp(
          env.nominal_logprob(s0, Action::discrete(static_cast<int>(i), support[i])));
    }
    return categorical(env, std::move(probs));
  }
  const GaussianSpec spec = env.nominal_gaussian(env.initial_state());
  return gaussian(spec.mean, spec.stddev);
}

Action StateFreeProposal::sample(const State&, Rng& rng) const {
  if (is_discrete()) {
    const int idx = sample_categorical(probs_, rng);
    return Action::discrete(idx, support_[static_cast<std::size_t>(idx)]);
  }
  return Action::continuous(mean_ + stddev_ * standard_normal(rng));
}

double StateFreeProposal::log_prob(const State&, const Action& a) const {
  if (is_discrete()) {
    if (a.index < 0 || a.index >= static_cast<int>(support_.size())) {
      throw InvalidActionError("StateFreeProposal::log_prob: index " +
                               std::to_string(a.index));
    }
    return logps_[static_cast<std::size_t>(a.index)];
  }
  const double z = (a.value - mean_) / stddev_;
  return -0.5 * z * z - std::log(stddev_) - 0.5 * std::log(2.0 * std::numbers::pi);
}

void StateFreeProposal::set_probs(std::vector<double> probs) {
  probs_ = std::move(probs);
  logps_.resize(probs_.size());
  for (std::size_t i = 0; i < probs_.size(); ++i) logps_[i] = std::log(probs_[i]);
}

void StateFreeProposal::set_gaussian(double mean, double stddev) {
  if (!(stddev > 0.0)) throw std::invalid_argument("StateFreeProposal: stddev <= 0");
  mean_ = mean;
  stddev_ = stddev;
}

QNetwork::QNetwork(const AdversarialMdp& env, Rng& init_rng)
    : env_(&env), net_({1}) {
  if (is_discrete(env.action_kind())) {
    support_ = support_of(env);
    num_actions_ = static_cast<int>(support_.size());
    net_ = Mlp(hidden_widths(env.feature_dim(), num_actions_));
  } else {
    net_ = Mlp(hidden_widths(env.feature_dim() + 1, 1));
  }
  net_.init_params(init_rng);
}

void QNetwork::input_for(const State& s, double action_value, std::span<double> out) const {
  env_->encode_features(s, out);
  out[static_cast<std::size_t>(env_->feature_dim())] = action_value;
}

double QNetwork::value(const State& s, const Action& a) const {
  if (is_discrete()) {
    double out[Mlp::kMaxWidth];
    values(s, std::span<double>(out, static_cast<std::size_t>(num_actions_)));
    if (a.index < 0 || a.index >= num_actions_) {
      throw InvalidActionError("QNetwork::value: index " + std::to_string(a.index));
    }
    return out[static_cast<std::size_t>(a.index)];
  }
  return value_at(s, a.value);
}

void QNetwork::values(const State& s, std::span<double> out) const {
  double feat[kMaxFeatures];
  env_->encode_features(
      s, std::span<double>(feat, static_cast<std::size_t>(env_->feature_dim())));
  net_.forward(std::span<const double>(feat, static_cast<std::size_t>(env_->feature_dim())),
               out);
}

double QNetwork::value_at(const State& s, double action_value) const {
  double in[kMaxFeatures + 1];
  input_for(s, action_value,
            std::span<double>(in, static_cast<std::size_t>(env_->feature_dim()) + 1));
  double out[1];
  net_.forward(
      std::span<const double>(in, static_cast<std::size_t>(env_->feature_dim()) + 1),
      std::span<double>(out, 1));
  return out[0];
}

double QNetwork::nominal_expectation(const State& s, const GaussHermite& quad) const {
  if (is_discrete()) {
    double q[Mlp::kMaxWidth];
    values(s, std::span<double>(q, static_cast<std::size_t>(num_actions_)));
    double total = 0.0;
    for (int i = 0; i < num_actions_; ++i) {
      const double pi = std::exp(env_->nominal_logprob(
          s, Action::discrete(i, support_[static_cast<std::size_t>(i)])));
      total += pi * q[static_cast<std::size_t>(i)];
    }
    return total;
  }
  const GaussianSpec spec = env_->nominal_gaussian(s);
  return gaussian_expectation(quad, spec.mean, spec.stddev,
                              [&](double a) { return value_at(s, a); });
}

void QNetwork::accumulate_value_grad(Mlp::Workspace& ws, const State& s, const Action& a,
                                     double d_value, std::span<double> grad) const {
  if (is_discrete()) {
    double feat[kMaxFeatures];
    env_->encode_features(
        s, std::span<double>(feat, static_cast<std::size_t>(env_->feature_dim())));
    double out[Mlp::kMaxWidth];
    net_.forward_cached(
        std::span<const double>(feat, static_cast<std::size_t>(env_->feature_dim())), ws,
        std::span<double>(out, static_cast<std::size_t>(num_actions_)));
    double dout[Mlp::kMaxWidth] = {};
    dout[static_cast<std::size_t>(a.index)] = d_value;
    net_.backward(ws, std::span<const double>(dout, static_cast<std::size_t>(num_actions_)),
                  grad);
    return;
  }
  double in[kMaxFeatures + 1];
  input_for(s, a.value,
            std::span<double>(in, static_cast<std::size_t>(env_->feature_dim()) + 1));
  double out[1];
  net_.forward_cached(
      std::span<const double>(in, static_cast<std::size_t>(env_->feature_dim()) + 1), ws,
      std::span<double>(out, 1));
  const double dout[1] = {d_value};
  net_.backward(ws, std::span<const double>(dout, 1), grad);
}

ValueNetwork::ValueNetwork(const AdversarialMdp& env, Rng& init_rng)
    : env_(&env), net_(hidden_widths(env.feature_dim(), 1)) {
  net_.init_params(init_rng);
}

double ValueNetwork::value(const State& s) const {
  double feat[kMaxFeatures];
  env_->encode_features(
      s, std::span<double>(feat, static_cast<std::size_t>(env_->feature_dim())));
  double out[1];
  net_.forward(std::span<const double>(feat, static_cast<std::size_t>(env_->feature_dim())),
               std::span<double>(out, 1));
  return out[0];
}

void ValueNetwork::accumulate_value_grad(Mlp::Workspace& ws, const State& s, double d_value,
                                         std::span<double> grad) const {
  double feat[kMaxFeatures];
  env_->encode_features(
      s, std::span<double>(feat, static_cast<std::size_t>(env_->feature_dim())));
  double out[1];
  net_.forward_cached(
      std::span<const double>(feat, static_cast<std::size_t>(env_->feature_dim())), ws,
      std::span<double>(out, 1));
  const double dout[1] = {d_value};
  net_.backward(ws, std::span<const double>(dout, 1), grad);
}

ValueActingProposal::ValueActingProposal(const AdversarialMdp& env, const QNetwork& q,
                                         double v_floor, double prob_floor)
    : env_(&env), q_(&q), v_floor_(v_floor), prob_floor_(prob_floor) {
  if (!is_discrete(env.action_kind())) {
    throw std::logic_error("ValueActingProposal: discrete environments only");
  }
  support_ = support_of(env);
}

void ValueActingProposal::action_probs(const State& s, std::span<double> out) const {
  const int n = static_cast<int>(support_.size());
  double q[Mlp::kMaxWidth];
  q_->values(s, std::span<double>(q, static_cast<std::size_t>(n)));

  double pi[Mlp::kMaxWidth];
  double v = 0.0;
  for (int i = 0; i < n; ++i) {
    pi[static_cast<std::size_t>(i)] = std::exp(env_->nominal_logprob(
        s, Action::discrete(i, support_[static_cast<std::size_t>(i)])));
    q[static_cast<std::size_t>(i)] = std::max(q[static_cast<std::size_t>(i)], 0.0);
    v += pi[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(i)];
  }

  if (v <= v_floor_) {
    // No failure mass predicted anywhere: act with the nominal model.
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = pi[(std::size_t)i];
    return;
  }
  const double uniform = prob_floor_ / static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    const double p = q[static_cast<std::size_t>(i)] * pi[static_cast<std::size_t>(i)] / v;
    out[static_cast<std::size_t>(i)] = (1.0 - prob_floor_) * p + uniform;
  }
}

Action ValueActingProposal::sample(const State& s, Rng& rng) const {
  double p[Mlp::kMaxWidth];
  action_probs(s, std::span<double>(p, support_.size()));
  const int idx = sample_categorical(std::span<const double>(p, support_.size()), rng);
  return Action::discrete(idx, support_[static_cast<std::size_t>(idx)]);
}

double ValueActingProposal::log_prob(const State& s, const Action& a) const {
  if (a.index < 0 || a.index >= static_cast<int>(support_.size())) {
    throw InvalidActionError("ValueActingProposal::log_prob: index " +
                             std::to_string(a.index));
  }
  double p[Mlp::kMaxWidth];
  action_probs(s, std::span<double>(p, support_.size()));
  return std::log(p[static_cast<std::size_t>(a.index)]);
}

}  // namespace rais
