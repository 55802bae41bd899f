#pragma once

#include <span>

#include "rais/errors.hpp"
#include "rais/rng.hpp"

namespace rais {

// Diagonal Gaussian policy head over raw network outputs laid out as
// [mean_0..mean_{d-1}, raw_logstd_0..raw_logstd_{d-1}]. The log-std is hard
// clamped so the density keeps full support and weights stay finite.
class GaussianHead {
 public:
  static constexpr double kLogStdMin = -5.0;
  static constexpr double kLogStdMax = 2.0;

  explicit GaussianHead(int action_dim) : dim_(action_dim) {}

  int action_dim() const { return dim_; }
  int output_dim() const { return 2 * dim_; }

  double mean(std::span<const double> outputs, int j) const { return outputs[(std::size_t)j]; }
  double stddev(std::span<const double> outputs, int j) const;

  double log_prob(std::span<const double> outputs, std::span<const double> action) const;

  // d log_prob / d outputs with the action held fixed (score form).
  void log_prob_grad(std::span<const double> outputs, std::span<const double> action,
                     std::span<double> d_outputs) const;

  void sample(std::span<const double> outputs, Rng& rng, std::span<double> action) const;

  // Reparameterized draw: action_j = mean_j + std_j * xi_j.
  void rsample(std::span<const double> outputs, std::span<const double> xi,
               std::span<double> action) const;

  // Pathwise d/d outputs of log_prob evaluated at the reparameterized action,
  // i.e. the derivative flows through the action as well as the density.
  void rsample_log_prob_grad(std::span<const double> outputs, std::span<const double> xi,
                             std::span<double> d_outputs) const;

 private:
  int dim_;
};

// Categorical policy head: probabilities are softmax logits mixed with a
// uniform floor, so every support action keeps probability >= floor / n.
class CategoricalHead {
 public:
  explicit CategoricalHead(int num_actions, double floor = 1e-3)
      : n_(num_actions), floor_(floor) {}

  int num_actions() const { return n_; }
  int output_dim() const { return n_; }
  double floor() const { return floor_; }

  void probs(std::span<const double> logits, std::span<double> out) const;
  double log_prob(std::span<const double> logits, int index) const;
  void log_prob_grad(std::span<const double> logits, int index,
                     std::span<double> d_logits) const;
  int sample(std::span<const double> logits, Rng& rng) const;

 private:
  int n_;
  double floor_;
};

}  // namespace rais
