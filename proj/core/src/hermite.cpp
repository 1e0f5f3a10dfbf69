#include "ptpu/hermite.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Dense>

namespace ptpu {

double hermite_function(int m, double x) {
  if (m < 0) throw std::invalid_argument("Hermite index must be non-negative");
  double prev = 0.0;
  double cur = std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0);
  for (int k = 0; k < m; ++k) {
    double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_functions(int m_max, double x) {
  std::vector<double> out(m_max + 1);
  out[0] = std::pow(M_PI, -0.25) * std::exp(-x * x / 2.0);
  if (m_max >= 1) out[1] = std::sqrt(2.0) * x * out[0];
  for (int k = 1; k < m_max; ++k) {
    out[k + 1] = std::sqrt(2.0 / (k + 1)) * x * out[k] - std::sqrt(double(k) / (k + 1)) * out[k - 1];
  }
  return out;
}

namespace {

GaussHermiteRule compute_rule(int n) {
  // Nodes: eigenvalues of the Jacobi matrix (off-diagonal sqrt(k/2)),
  // polished by Newton steps on the normalized Hermite functions.
  // Weights: w_i e^{x_i^2} = 1 / sum_{k<n} psi_k(x_i)^2, which is accurate in
  // the relative sense even at the extreme nodes, where eigenvector-based
  // weights drown in roundoff and would corrupt the e^{x^2} rescaling.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = std::sqrt(k / 2.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.scaled_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    for (int iter = 0; iter < 3; ++iter) {
      std::vector<double> psi = hermite_functions(n, x);
      double slope = std::sqrt(2.0 * n) * psi[n - 1] - x * psi[n];
      if (slope == 0.0) break;
      double dx = psi[n] / slope;
      x -= dx;
      if (std::abs(dx) < 1e-15 * (1.0 + std::abs(x))) break;
    }
    std::vector<double> psi = hermite_functions(n - 1, x);
    double density = 0.0;
    for (int k = 0; k < n; ++k) density += psi[k] * psi[k];
    rule.nodes[i] = x;
    rule.scaled_weights[i] = 1.0 / density;
    rule.weights[i] = std::exp(-x * x) / density;
  }
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("node count must be positive");
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_rule(n)).first;
  return it->second;
}

Complex pairwise_sum(std::span<const Complex> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace ptpu
