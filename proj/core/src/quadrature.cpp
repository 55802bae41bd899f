#include "rais/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rais {

namespace {
// Orthonormal Hermite value and derivative at x.
void hermite_eval(int n, double x, double* value, double* derivative) {
  const double pi_quarter = std::pow(std::numbers::pi, -0.25);
  double p_prev = 0.0;
  double p = pi_quarter;
  for (int j = 1; j <= n; ++j) {
    const double p_next =
        x * std::sqrt(2.0 / j) * p - std::sqrt((j - 1.0) / j) * p_prev;
    p_prev = p;
    p = p_next;
  }
  *value = p;
  *derivative = std::sqrt(2.0 * n) * p_prev;
}
}  // namespace

GaussHermite gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
  GaussHermite rule;
  rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
  rule.weights.assign(static_cast<std::size_t>(n), 0.0);

  const int half = (n + 1) / 2;
  double x = 0.0;
  for (int i = 0; i < half; ++i) {
    // Standard initial guesses for the roots, largest first.
    if (i == 0) {
      x = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      x -= 1.14 * std::pow(static_cast<double>(n), 0.426) / x;
    } else if (i == 2) {
      x = 1.86 * x - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      x = 1.91 * x - 0.91 * rule.nodes[1];
    } else {
      x = 2.0 * x - rule.nodes[static_cast<std::size_t>(i) - 2];
    }

    double value = 0.0, derivative = 0.0;
    for (int it = 0; it < 100; ++it) {
      hermite_eval(n, x, &value, &derivative);
      const double dx = value / derivative;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * (1.0 + std::abs(x))) break;
    }
    hermite_eval(n, x, &value, &derivative);
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / (derivative * derivative);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] =
        rule.weights[static_cast<std::size_t>(i)];
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

double gaussian_expectation(const GaussHermite& rule, double mean, double stddev,
                            const std::function<double(double)>& f) {
  const double scale = std::numbers::sqrt2 * stddev;
  double total = 0.0;
  for (int i = 0; i < rule.size(); ++i) {
    total += rule.weights[static_cast<std::size_t>(i)] *
             f(mean + scale * rule.nodes[static_cast<std::size_t>(i)]);
  }
  return total / std::sqrt(std::numbers::pi);
}

}  // namespace rais
