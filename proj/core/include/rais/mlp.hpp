#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rais/rng.hpp"

namespace rais {

// Dense feed-forward network with rectified-linear hidden layers and a
// linear output layer. Parameters live in one flat array (per layer: weight
// matrix row-major [out x in], then bias), which is what the optimizer and
// the checkpoint format operate on.
class Mlp {
 public:
  static constexpr int kMaxWidth = 64;

  explicit Mlp(std::vector<int> widths);

  // Fan-in-scaled uniform weights, zero biases.
  void init_params(Rng& rng);

  const std::vector<int>& widths() const { return widths_; }
  int input_dim() const { return widths_.front(); }
  int output_dim() const { return widths_.back(); }
  int param_count() const { return static_cast<int>(params_.size()); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  void forward(std::span<const double> input, std::span<double> output) const;

  // Training-path forward that records activations for backward().
  struct Workspace {
    std::vector<double> acts;  // concatenated layer activations, input first
  };
  void forward_cached(std::span<const double> input, Workspace& ws,
                      std::span<double> output) const;

  // Accumulates d(loss)/d(params) into grad given d(loss)/d(output) for the
  // sample recorded in ws.
  void backward(const Workspace& ws, std::span<const double> d_output,
                std::span<double> grad) const;

 private:
  std::vector<int> widths_;
  std::vector<double> params_;
  std::vector<int> layer_offsets_;  // start of each layer's weights in params_
};

// Adam with global gradient-norm clipping applied before the update.
class AdamOptimizer {
 public:
  struct Options {
    double learning_rate = 3e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    double clip_norm = 1.0;
  };

  explicit AdamOptimizer(int param_count);
  AdamOptimizer(int param_count, Options options);

  void step(std::span<double> params, std::span<const double> grad);

  const Options& options() const { return options_; }
  long step_count() const { return step_count_; }

 private:
  Options options_;
  std::vector<double> m_;
  std::vector<double> v_;
  long step_count_ = 0;
};

// Checkpoint format: a text header carrying the layer widths followed by
// one parameter per line.
void save_params(const Mlp& mlp, std::ostream& out);
void save_params(const Mlp& mlp, const std::string& path);
Mlp load_params(std::istream& in);
Mlp load_params(const std::string& path);

}  // namespace rais
