#pragma once

#include <functional>
#include <vector>

namespace rais {

// Gauss-Hermite rule for integrals against exp(-x^2).
struct GaussHermite {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

GaussHermite gauss_hermite(int n);

// E_{x ~ N(mean, stddev^2)}[f(x)] via the substitution x = mean + sqrt(2)*stddev*t.
double gaussian_expectation(const GaussHermite& rule, double mean, double stddev,
                            const std::function<double(double)>& f);

}  // namespace rais
