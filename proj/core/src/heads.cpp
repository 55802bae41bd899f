#include "rais/heads.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rais {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;  // log(2*pi)

double clamp(double x, double lo, double hi) { return std::min(std::max(x, lo), hi); }
}  // namespace

double GaussianHead::stddev(std::span<const double> outputs, int j) const {
  return std::exp(clamp(outputs[static_cast<std::size_t>(dim_ + j)], kLogStdMin, kLogStdMax));
}

double GaussianHead::log_prob(std::span<const double> outputs,
                              std::span<const double> action) const {
  double logp = 0.0;
  for (int j = 0; j < dim_; ++j) {
    const double m = outputs[static_cast<std::size_t>(j)];
    const double log_std =
        clamp(outputs[static_cast<std::size_t>(dim_ + j)], kLogStdMin, kLogStdMax);
    const double z = (action[static_cast<std::size_t>(j)] - m) * std::exp(-log_std);
    logp += -0.5 * z * z - log_std - 0.5 * kLog2Pi;
  }
  return logp;
}

void GaussianHead::log_prob_grad(std::span<const double> outputs,
                                 std::span<const double> action,
                                 std::span<double> d_outputs) const {
  for (int j = 0; j < dim_; ++j) {
    const double raw = outputs[static_cast<std::size_t>(dim_ + j)];
    const double log_std = clamp(raw, kLogStdMin, kLogStdMax);
    const double inv_std = std::exp(-log_std);
    const double z = (action[static_cast<std::size_t>(j)] -
                      outputs[static_cast<std::size_t>(j)]) *
                     inv_std;
    d_outputs[static_cast<std::size_t>(j)] = z * inv_std;
    const bool inside = raw > kLogStdMin && raw < kLogStdMax;
    d_outputs[static_cast<std::size_t>(dim_ + j)] = inside ? (z * z - 1.0) : 0.0;
  }
}

void GaussianHead::sample(std::span<const double> outputs, Rng& rng,
                          std::span<double> action) const {
  for (int j = 0; j < dim_; ++j) {
    action[static_cast<std::size_t>(j)] =
        outputs[static_cast<std::size_t>(j)] + stddev(outputs, j) * standard_normal(rng);
  }
}

void GaussianHead::rsample(std::span<const double> outputs, std::span<const double> xi,
                           std::span<double> action) const {
  for (int j = 0; j < dim_; ++j) {
    action[static_cast<std::size_t>(j)] =
        outputs[static_cast<std::size_t>(j)] +
        stddev(outputs, j) * xi[static_cast<std::size_t>(j)];
  }
}

void GaussianHead::rsample_log_prob_grad(std::span<const double> outputs,
                                         std::span<const double> xi,
                                         std::span<double> d_outputs) const {
  // Chain rule: d/d_out log q(a(out)) = (d log q / d_out)|_a  +
  //                                     (d log q / d_a) * (d_a / d_out).
  for (int j = 0; j < dim_; ++j) {
    const double raw = outputs[static_cast<std::size_t>(dim_ + j)];
    const double log_std = clamp(raw, kLogStdMin, kLogStdMax);
    const double std = std::exp(log_std);
    const double inv_std = 1.0 / std;
    const double z = xi[static_cast<std::size_t>(j)];  // (a - m) / std by construction
    const double dlogq_da = -z * inv_std;
    const bool inside = raw > kLogStdMin && raw < kLogStdMax;

    // Mean: explicit term z/std plus path term dlogq_da * 1.
    d_outputs[static_cast<std::size_t>(j)] = z * inv_std + dlogq_da;
    // Raw log-std: explicit (z^2 - 1) plus path dlogq_da * std * xi.
    d_outputs[static_cast<std::size_t>(dim_ + j)] =
        inside ? (z * z - 1.0) + dlogq_da * std * z : 0.0;
  }
}

void CategoricalHead::probs(std::span<const double> logits, std::span<double> out) const {
  const double m = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (int i = 0; i < n_; ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(logits[static_cast<std::size_t>(i)] - m);
    total += out[static_cast<std::size_t>(i)];
  }
  const double uniform = floor_ / static_cast<double>(n_);
  for (int i = 0; i < n_; ++i) {
    out[static_cast<std::size_t>(i)] =
        (1.0 - floor_) * out[static_cast<std::size_t>(i)] / total + uniform;
  }
}

double CategoricalHead::log_prob(std::span<const double> logits, int index) const {
  if (index < 0 || index >= n_) {
    throw InvalidActionError("CategoricalHead::log_prob: index " + std::to_string(index));
  }
  double p[64];
  probs(logits, std::span<double>(p, static_cast<std::size_t>(n_)));
  return std::log(p[static_cast<std::size_t>(index)]);
}

void CategoricalHead::log_prob_grad(std::span<const double> logits, int index,
                                    std::span<double> d_logits) const {
  if (index < 0 || index >= n_) {
    throw InvalidActionError("CategoricalHead::log_prob_grad: index " +
                             std::to_string(index));
  }
  // softmax without the floor
  const double m = *std::max_element(logits.begin(), logits.end());
  double s[64];
  double total = 0.0;
  for (int i = 0; i < n_; ++i) {
    s[i] = std::exp(logits[static_cast<std::size_t>(i)] - m);
    total += s[i];
  }
  for (int i = 0; i < n_; ++i) s[i] /= total;
  const double p_index = (1.0 - floor_) * s[index] + floor_ / static_cast<double>(n_);
  for (int i = 0; i < n_; ++i) {
    const double delta = i == index ? 1.0 : 0.0;
    d_logits[static_cast<std::size_t>(i)] =
        (1.0 - floor_) * s[index] * (delta - s[i]) / p_index;
  }
}

int CategoricalHead::sample(std::span<const double> logits, Rng& rng) const {
  double p[64];
  probs(logits, std::span<double>(p, static_cast<std::size_t>(n_)));
  return sample_categorical(std::span<const double>(p, static_cast<std::size_t>(n_)), rng);
}

}  // namespace rais
