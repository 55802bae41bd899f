#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rais/heads.hpp"
#include "rais/rng.hpp"

using namespace rais;

namespace {
double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-8);
}
}  // namespace

TEST_CASE("gaussian log-density at the mean with unit std") {
  GaussianHead head(2);
  const std::vector<double> outputs{0.7, -1.2, 0.0, 0.0};  // means, raw log-stds
  const std::vector<double> action{0.7, -1.2};
  CHECK(head.log_prob(outputs, action) ==
        doctest::Approx(-std::log(2.0 * std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("gaussian log-std clamp") {
  GaussianHead head(1);
  CHECK(head.stddev(std::vector<double>{0.0, -20.0}, 0) == std::exp(-5.0));
  CHECK(head.stddev(std::vector<double>{0.0, 9.0}, 0) == std::exp(2.0));

  // No gradient flows through a clamped log-std.
  std::vector<double> grad(2);
  head.log_prob_grad(std::vector<double>{0.0, -20.0}, std::vector<double>{0.3}, grad);
  CHECK(grad[1] == 0.0);
}

TEST_CASE("gaussian score gradient matches finite differences") {
  GaussianHead head(2);
  std::vector<double> outputs{0.4, -0.2, -0.5, 0.3};
  const std::vector<double> action{0.9, -0.6};

  std::vector<double> analytic(4);
  head.log_prob_grad(outputs, action, analytic);

  const double h = 1e-6;
  for (int k = 0; k < 4; ++k) {
    const double saved = outputs[(std::size_t)k];
    outputs[(std::size_t)k] = saved + h;
    const double up = head.log_prob(outputs, action);
    outputs[(std::size_t)k] = saved - h;
    const double down = head.log_prob(outputs, action);
    outputs[(std::size_t)k] = saved;
    CHECK(rel_err(analytic[(std::size_t)k], (up - down) / (2.0 * h)) < 1e-4);
  }
}

TEST_CASE("reparameterized draw and its pathwise gradient") {
  GaussianHead head(1);
  std::vector<double> outputs{0.25, -0.4};
  const std::vector<double> xi{1.3};

  std::vector<double> action(1);
  head.rsample(outputs, xi, action);
  CHECK(action[0] == doctest::Approx(0.25 + std::exp(-0.4) * 1.3).epsilon(1e-14));

  // Common random numbers: differentiate log q_out(rsample(out, xi)) in the
  // outputs with xi held fixed.
  std::vector<double> analytic(2);
  head.rsample_log_prob_grad(outputs, xi, analytic);

  auto value = [&](const std::vector<double>& out) {
    std::vector<double> a(1);
    head.rsample(out, xi, a);
    return head.log_prob(out, a);
  };
  const double h = 1e-6;
  for (int k = 0; k < 2; ++k) {
    std::vector<double> up = outputs, down = outputs;
    up[(std::size_t)k] += h;
    down[(std::size_t)k] -= h;
    const double fd = (value(up) - value(down)) / (2.0 * h);
    CHECK(rel_err(analytic[(std::size_t)k], fd) < 1e-3);
  }

  // The mean receives no pathwise gradient; the log-std slot gets -1.
  CHECK(std::abs(analytic[0]) <= 1e-12);
  CHECK(analytic[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("gaussian sampling reproduces the parameterized moments (seeded)") {
  GaussianHead head(1);
  const std::vector<double> outputs{1.5, std::log(0.7)};
  Rng rng = derive_stream(5, StreamSalt::kPolicyUpdate, 0);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  std::vector<double> a(1);
  for (int i = 0; i < n; ++i) {
    head.sample(outputs, rng, a);
    sum += a[0];
    sum_sq += a[0] * a[0];
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(mean == doctest::Approx(1.5).epsilon(0.01));
  CHECK(std::sqrt(var) == doctest::Approx(0.7).epsilon(0.02));
}

TEST_CASE("categorical probabilities: uniform logits give the uniform row") {
  CategoricalHead head(5, 1e-3);
  std::vector<double> p(5);
  head.probs(std::vector<double>{0.0, 0.0, 0.0, 0.0, 0.0}, p);
  for (double pi : p) CHECK(pi == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("categorical floor keeps every action alive") {
  CategoricalHead head(4, 1e-3);
  std::vector<double> p(4);
  head.probs(std::vector<double>{40.0, 0.0, -40.0, 0.0}, p);
  double total = 0.0;
  for (double pi : p) {
    CHECK(pi >= 1e-3 / 4.0);
    total += pi;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("categorical log-density and errors") {
  CategoricalHead head(3, 1e-3);
  const std::vector<double> logits{std::log(0.5), std::log(0.3), std::log(0.2)};
  std::vector<double> p(3);
  head.probs(logits, p);
  CHECK(head.log_prob(logits, 1) == doctest::Approx(std::log(p[1])).epsilon(1e-14));
  CHECK_THROWS_AS(head.log_prob(logits, 3), InvalidActionError);
  CHECK_THROWS_AS(head.log_prob(logits, -1), InvalidActionError);
}

TEST_CASE("categorical score gradient matches finite differences") {
  CategoricalHead head(4, 1e-3);
  std::vector<double> logits{0.3, -0.8, 1.2, 0.05};

  for (int idx = 0; idx < 4; ++idx) {
    std::vector<double> analytic(4);
    head.log_prob_grad(logits, idx, analytic);
    const double h = 1e-6;
    for (int k = 0; k < 4; ++k) {
      std::vector<double> up = logits, down = logits;
      up[(std::size_t)k] += h;
      down[(std::size_t)k] -= h;
      const double fd = (head.log_prob(up, idx) - head.log_prob(down, idx)) / (2.0 * h);
      CHECK(rel_err(analytic[(std::size_t)k], fd) < 1e-4);
    }
  }
}

TEST_CASE("categorical sampling matches the probability row (seeded)") {
  CategoricalHead head(3, 1e-3);
  const std::vector<double> logits{1.0, 0.0, -1.0};
  std::vector<double> p(3);
  head.probs(logits, p);

  Rng rng = derive_stream(8, StreamSalt::kPolicyUpdate, 0);
  const int n = 300000;
  std::vector<int> counts(3, 0);
  for (int i = 0; i < n; ++i) ++counts[(std::size_t)head.sample(logits, rng)];
  for (int k = 0; k < 3; ++k) {
    const double freq = static_cast<double>(counts[(std::size_t)k]) / n;
    const double se = std::sqrt(p[(std::size_t)k] * (1 - p[(std::size_t)k]) / n);
    CHECK(std::abs(freq - p[(std::size_t)k]) <= 4.0 * se);
  }
}
