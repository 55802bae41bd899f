#include "rais/mlp.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rais {

Mlp::Mlp(std::vector<int> widths) : widths_(std::move(widths)) {
  if (widths_.size() < 2) throw std::invalid_argument("Mlp: need at least two widths");
  int count = 0;
  for (std::size_t l = 1; l < widths_.size(); ++l) {
    if (widths_[l] <= 0 || widths_[l] > kMaxWidth) {
      throw std::invalid_argument("Mlp: layer width out of range");
    }
    layer_offsets_.push_back(count);
    count += widths_[l] * widths_[l - 1] + widths_[l];
  }
  if (widths_.front() <= 0 || widths_.front() > kMaxWidth) {
    throw std::invalid_argument("Mlp: input width out of range");
  }
  params_.assign(static_cast<std::size_t>(count), 0.0);
}

void Mlp::init_params(Rng& rng) {
  for (std::size_t l = 1; l < widths_.size(); ++l) {
    const int in = widths_[l - 1];
    const int out = widths_[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    double* w = params_.data() + layer_offsets_[l - 1];
    for (int i = 0; i < out * in; ++i) {
      w[i] = bound * (2.0 * uniform_unit(rng) - 1.0);
    }
    double* b = w + out * in;
    for (int i = 0; i < out; ++i) b[i] = 0.0;
  }
}

void Mlp::forward(std::span<const double> input, std::span<double> output) const {
  double buf_a[kMaxWidth];
  double buf_b[kMaxWidth];
  const double* cur = input.data();
  double* next = buf_a;
  double* spare = buf_b;

  const std::size_t layers = widths_.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const int in = widths_[l];
    const int out = widths_[l + 1];
    const double* w = params_.data() + layer_offsets_[l];
    const double* b = w + out * in;
    double* dst = (l + 1 == layers) ? output.data() : next;
    for (int i = 0; i < out; ++i) {
      double acc = b[i];
      const double* row = w + i * in;
      for (int j = 0; j < in; ++j) acc += row[j] * cur[j];
      dst[i] = (l + 1 == layers) ? acc : (acc > 0.0 ? acc : 0.0);
    }
    cur = dst;
    std::swap(next, spare);
  }
}

void Mlp::forward_cached(std::span<const double> input, Workspace& ws,
                         std::span<double> output) const {
  const int total = std::accumulate(widths_.begin(), widths_.end(), 0);
  ws.acts.resize(static_cast<std::size_t>(total));

  double* act = ws.acts.data();
  for (int j = 0; j < widths_.front(); ++j) act[j] = input[static_cast<std::size_t>(j)];

  const double* cur = act;
  int offset = widths_.front();
  const std::size_t layers = widths_.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const int in = widths_[l];
    const int out = widths_[l + 1];
    const double* w = params_.data() + layer_offsets_[l];
    const double* b = w + out * in;
    double* dst = ws.acts.data() + offset;
    const bool last = (l + 1 == layers);
    for (int i = 0; i < out; ++i) {
      double acc = b[i];
      const double* row = w + i * in;
      for (int j = 0; j < in; ++j) acc += row[j] * cur[j];
      dst[i] = last ? acc : (acc > 0.0 ? acc : 0.0);
    }
    cur = dst;
    offset += out;
  }
  for (int i = 0; i < output_dim(); ++i) {
    output[static_cast<std::size_t>(i)] = cur[i];
  }
}

void Mlp::backward(const Workspace& ws, std::span<const double> d_output,
                   std::span<double> grad) const {
  double delta_a[kMaxWidth];
  double delta_b[kMaxWidth];
  double* delta = delta_a;
  double* delta_prev = delta_b;
  for (int i = 0; i < output_dim(); ++i) delta[i] = d_output[static_cast<std::size_t>(i)];

  // Offsets of each layer's activations within ws.acts.
  const std::size_t layers = widths_.size() - 1;
  int act_offset_end = std::accumulate(widths_.begin(), widths_.end(), 0);

  for (std::size_t l = layers; l-- > 0;) {
    const int in = widths_[l];
    const int out = widths_[l + 1];
    act_offset_end -= out;
    const double* a_prev = ws.acts.data() + (act_offset_end - in);
    const double* w = params_.data() + layer_offsets_[l];
    double* gw = grad.data() + layer_offsets_[l];
    double* gb = gw + out * in;

    for (int i = 0; i < out; ++i) {
      const double d = delta[i];
      double* grow = gw + i * in;
      for (int j = 0; j < in; ++j) grow[j] += d * a_prev[j];
      gb[i] += d;
    }
    if (l > 0) {
      for (int j = 0; j < in; ++j) {
        double acc = 0.0;
        for (int i = 0; i < out; ++i) acc += w[i * in + j] * delta[i];
        // ReLU derivative from the recorded post-activation.
        delta_prev[j] = a_prev[j] > 0.0 ? acc : 0.0;
      }
      std::swap(delta, delta_prev);
    }
  }
}

AdamOptimizer::AdamOptimizer(int param_count) : AdamOptimizer(param_count, Options{}) {}

AdamOptimizer::AdamOptimizer(int param_count, Options options)
    : options_(options),
      m_(static_cast<std::size_t>(param_count), 0.0),
      v_(static_cast<std::size_t>(param_count), 0.0) {}

void AdamOptimizer::step(std::span<double> params, std::span<const double> grad) {
  if (params.size() != m_.size() || grad.size() != m_.size()) {
    throw std::invalid_argument("AdamOptimizer::step: shape mismatch");
  }
  double norm_sq = 0.0;
  for (double g : grad) norm_sq += g * g;
  const double norm = std::sqrt(norm_sq);
  const double scale =
      (options_.clip_norm > 0.0 && norm > options_.clip_norm) ? options_.clip_norm / norm
                                                              : 1.0;

  ++step_count_;
  const double bc1 = 1.0 - std::pow(options_.beta1, static_cast<double>(step_count_));
  const double bc2 = 1.0 - std::pow(options_.beta2, static_cast<double>(step_count_));
  for (std::size_t i = 0; i < m_.size(); ++i) {
    const double g = grad[i] * scale;
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * g;
    v_[i] = options_.beta2 * v_[i] + (1.0 - options_.beta2) * g * g;
    const double m_hat = m_[i] / bc1;
    const double v_hat = v_[i] / bc2;
    params[i] -= options_.learning_rate * m_hat / (std::sqrt(v_hat) + options_.epsilon);
  }
}

void save_params(const Mlp& mlp, std::ostream& out) {
  out << "mlp " << mlp.widths().size();
  for (int w : mlp.widths()) out << ' ' << w;
  out << '\n';
  char buf[64];
  for (double p : mlp.params()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", p);
    out << buf;
  }
}

void save_params(const Mlp& mlp, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_params: cannot open " + path);
  save_params(mlp, out);
}

Mlp load_params(std::istream& in) {
  std::string tag;
  std::size_t n = 0;
  if (!(in >> tag >> n) || tag != "mlp") {
    throw std::runtime_error("load_params: bad header");
  }
  std::vector<int> widths(n);
  for (auto& w : widths) {
    if (!(in >> w)) throw std::runtime_error("load_params: truncated width list");
  }
  Mlp mlp(widths);
  for (auto& p : mlp.params()) {
    if (!(in >> p)) throw std::runtime_error("load_params: truncated parameter list");
  }
  return mlp;
}

Mlp load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_params: cannot open " + path);
  return load_params(in);
}

}  // namespace rais
