#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "ptpu/complex_format.hpp"

namespace ptpu {

/// Orthonormal Hermite function phi_m(x) = H_m(x) e^{-x^2/2} / sqrt(2^m m! sqrt(pi)),
/// evaluated with the stable three-term recurrence.
double hermite_function(int m, double x);

/// phi_0(x) .. phi_m_max(x) in one sweep.
std::vector<double> hermite_functions(int m_max, double x);

/// Gauss-Hermite rule for weight e^{-x^2} (Golub-Welsch).
/// scaled_weights[i] = weights[i] * e^{x_i^2}, assembled in log space so large
/// node counts do not overflow.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;
};

/// Cached, thread-safe. n >= 1.
const GaussHermiteRule& gauss_hermite(int n);

/// Pairwise (tree) summation for reproducible quadrature accumulation.
Complex pairwise_sum(std::span<const Complex> values);

/// Integral of f over the real line for integrands decaying like e^{-alpha s^2}:
/// nodes are placed at x_i / sqrt(alpha).
template <typename F>
Complex integrate_gauss_hermite(F&& f, double alpha, int n) {
  const GaussHermiteRule& rule = gauss_hermite(n);
  double scale = 1.0 / std::sqrt(alpha);
  std::vector<Complex> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    terms[i] = rule.scaled_weights[i] * f(rule.nodes[i] * scale) * scale;
  }
  return pairwise_sum(terms);
}

}  // namespace ptpu
