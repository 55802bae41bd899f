#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "rais/mlp.hpp"
#include "rais/rng.hpp"

using namespace rais;

namespace {

// Batch mean-squared-error loss and its analytic gradient, shared by the
// finite-difference checks.
double mse_loss(const Mlp& mlp, const std::vector<std::vector<double>>& xs,
                const std::vector<std::vector<double>>& ys) {
  std::vector<double> out(static_cast<std::size_t>(mlp.output_dim()));
  double loss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mlp.forward(xs[i], out);
    for (std::size_t j = 0; j < out.size(); ++j) {
      const double d = out[j] - ys[i][j];
      loss += d * d;
    }
  }
  return loss / static_cast<double>(xs.size());
}

std::vector<double> mse_grad(const Mlp& mlp, const std::vector<std::vector<double>>& xs,
                             const std::vector<std::vector<double>>& ys) {
  std::vector<double> grad(static_cast<std::size_t>(mlp.param_count()), 0.0);
  std::vector<double> out(static_cast<std::size_t>(mlp.output_dim()));
  std::vector<double> dout(out.size());
  Mlp::Workspace ws;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mlp.forward_cached(xs[i], ws, out);
    for (std::size_t j = 0; j < out.size(); ++j) {
      dout[j] = 2.0 * (out[j] - ys[i][j]) / static_cast<double>(xs.size());
    }
    mlp.backward(ws, dout, grad);
  }
  return grad;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-8);
}

}  // namespace

TEST_CASE("zero parameters produce the zero output") {
  Mlp mlp({3, 32, 32, 5});
  std::vector<double> out(5);
  mlp.forward(std::vector<double>{0.3, -1.0, 2.0}, out);
  for (double o : out) CHECK(o == 0.0);
}

TEST_CASE("identity-configured single layer passes the input through") {
  Mlp mlp({2, 2});
  auto p = mlp.params();
  // weights row-major [2x2] then biases
  p[0] = 1.0;
  p[3] = 1.0;
  std::vector<double> out(2);
  mlp.forward(std::vector<double>{0.25, -3.5}, out);
  CHECK(out[0] == 0.25);
  CHECK(out[1] == -3.5);
}

TEST_CASE("forward and forward_cached agree") {
  Mlp mlp({3, 32, 32, 5});
  Rng rng = derive_stream(42, StreamSalt::kNetworkInit, 0);
  mlp.init_params(rng);
  const std::vector<double> x{0.2, -0.4, 0.9};
  std::vector<double> out_a(5), out_b(5);
  mlp.forward(x, out_a);
  Mlp::Workspace ws;
  mlp.forward_cached(x, ws, out_b);
  for (int i = 0; i < 5; ++i) CHECK(out_a[(std::size_t)i] == out_b[(std::size_t)i]);
}

TEST_CASE("constant loss has zero gradient") {
  Mlp mlp({2, 4, 1});
  Rng rng = derive_stream(7, StreamSalt::kNetworkInit, 0);
  mlp.init_params(rng);
  std::vector<double> grad(static_cast<std::size_t>(mlp.param_count()), 0.0);
  Mlp::Workspace ws;
  std::vector<double> out(1);
  mlp.forward_cached(std::vector<double>{0.5, 0.5}, ws, out);
  mlp.backward(ws, std::vector<double>{0.0}, grad);
  for (double g : grad) CHECK(g == 0.0);
}

TEST_CASE("single linear unit matches the hand-derived gradient") {
  // loss = (w x + b - y)^2, so d/dw = 2 r x and d/db = 2 r.
  Mlp mlp({1, 1});
  auto p = mlp.params();
  p[0] = 0.8;   // w
  p[1] = -0.3;  // b
  const double x = 1.7, y = 0.25;
  const double r = 0.8 * x - 0.3 - y;

  const auto grad = mse_grad(mlp, {{x}}, {{y}});
  CHECK(grad[0] == doctest::Approx(2.0 * r * x).epsilon(1e-14));
  CHECK(grad[1] == doctest::Approx(2.0 * r).epsilon(1e-14));
}

TEST_CASE("backward matches central finite differences on a random batch") {
  Mlp mlp({3, 8, 8, 2});
  Rng rng = derive_stream(11, StreamSalt::kNetworkInit, 0);
  mlp.init_params(rng);

  std::vector<std::vector<double>> xs, ys;
  for (int i = 0; i < 6; ++i) {
    xs.push_back({standard_normal(rng), standard_normal(rng), standard_normal(rng)});
    ys.push_back({standard_normal(rng), standard_normal(rng)});
  }

  const auto analytic = mse_grad(mlp, xs, ys);
  const double h = 1e-6;
  auto params = mlp.params();
  for (int k = 0; k < mlp.param_count(); ++k) {
    const double saved = params[(std::size_t)k];
    params[(std::size_t)k] = saved + h;
    const double up = mse_loss(mlp, xs, ys);
    params[(std::size_t)k] = saved - h;
    const double down = mse_loss(mlp, xs, ys);
    params[(std::size_t)k] = saved;
    const double fd = (up - down) / (2.0 * h);
    CHECK(rel_err(analytic[(std::size_t)k], fd) < 1e-4);
  }
}

TEST_CASE("regression-pinned forward pass") {
  Mlp mlp({3, 32, 32, 5});
  Rng rng = derive_stream(2023, StreamSalt::kNetworkInit, 1);
  mlp.init_params(rng);
  std::vector<double> out(5);
  mlp.forward(std::vector<double>{0.5, -0.25, 1.5}, out);
  // Frozen on first run; guards the parameter layout and init scheme.
  const double expected[5] = {0.072138750962992021, -0.013594575470762675,
                              -0.061421179419856101, 0.035943325588128107,
                              -0.045704101687921862};
  for (int i = 0; i < 5; ++i) {
    CHECK(out[(std::size_t)i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("adam leaves parameters untouched on a zero gradient") {
  Mlp mlp({2, 4, 1});
  Rng rng = derive_stream(3, StreamSalt::kNetworkInit, 0);
  mlp.init_params(rng);
  const std::vector<double> before(mlp.params().begin(), mlp.params().end());
  AdamOptimizer adam(mlp.param_count());
  const std::vector<double> zeros(static_cast<std::size_t>(mlp.param_count()), 0.0);
  adam.step(mlp.params(), zeros);
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(std::abs(mlp.params()[i] - before[i]) <= 1e-12);
  }
}

TEST_CASE("adam clips the gradient to unit global norm") {
  // A gradient of norm 10 must produce the same update as the same
  // direction at norm 1.
  std::vector<double> params_a{0.5, -0.5, 1.0, 0.0};
  std::vector<double> params_b = params_a;
  AdamOptimizer adam_a(4), adam_b(4);
  std::vector<double> big{6.0, 0.0, -8.0, 0.0};  // norm 10
  std::vector<double> unit{0.6, 0.0, -0.8, 0.0};
  adam_a.step(params_a, big);
  adam_b.step(params_b, unit);
  for (int i = 0; i < 4; ++i) {
    CHECK(params_a[(std::size_t)i] == params_b[(std::size_t)i]);
  }
}

TEST_CASE("adam is deterministic") {
  std::vector<double> params_a{1.0, 2.0};
  std::vector<double> params_b{1.0, 2.0};
  AdamOptimizer adam_a(2), adam_b(2);
  const std::vector<double> grad{0.3, -0.1};
  for (int i = 0; i < 5; ++i) {
    adam_a.step(params_a, grad);
    adam_b.step(params_b, grad);
  }
  CHECK(params_a[0] == params_b[0]);
  CHECK(params_a[1] == params_b[1]);
}

TEST_CASE("parameter checkpoints round-trip exactly") {
  Mlp mlp({3, 32, 32, 2});
  Rng rng = derive_stream(17, StreamSalt::kNetworkInit, 0);
  mlp.init_params(rng);

  std::stringstream buffer;
  save_params(mlp, buffer);
  const Mlp loaded = load_params(buffer);

  REQUIRE(loaded.widths() == mlp.widths());
  REQUIRE(loaded.param_count() == mlp.param_count());
  for (int i = 0; i < mlp.param_count(); ++i) {
    CHECK(loaded.params()[(std::size_t)i] == mlp.params()[(std::size_t)i]);
  }
}

TEST_CASE("checkpoint loading rejects a bad header") {
  std::stringstream buffer("nonsense 3 1 2 3\n");
  CHECK_THROWS_AS(load_params(buffer), std::runtime_error);
}
