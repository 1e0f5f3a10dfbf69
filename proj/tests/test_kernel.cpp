#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ptpu/errors.hpp"
#include "ptpu/kernel.hpp"

using namespace ptpu;

namespace {

const SingleOscillatorParams kDamped{1.0, Complex(1.0, -0.5), 1.0};
const SingleOscillatorParams kNegativeMass{-1.0, Complex(1.0, -0.5), 1.0};
const SingleOscillatorParams kTwisted{Complex(1.0, 0.2), Complex(0.8, -0.4), 1.0};

double spectral_vs_closed(const SingleOscillatorParams& params, double dt, int m_max) {
  KernelRequest req{params, dt, m_max, 1};
  double dev = 0.0;
  for (double s_to = -3.0; s_to <= 3.0 + 1e-12; s_to += 0.5) {
    for (double s_from = -3.0; s_from <= 3.0 + 1e-12; s_from += 0.5) {
      dev = std::max(dev, std::abs(spectral_kernel(req, s_to, s_from) -
                                   closed_form_kernel(req, s_to, s_from)));
    }
  }
  return dev;
}

}  // namespace

TEST_CASE("spectral sum matches the closed form") {
  CHECK(spectral_vs_closed(kDamped, 0.7, 60) < 1e-6);
  CHECK(spectral_vs_closed(kNegativeMass, 0.7, 60) < 1e-6);
  CHECK(spectral_vs_closed(kTwisted, 0.7, 60) < 1e-6);
}

TEST_CASE("equal-time kernel is a smeared delta") {
  // applied to a Gaussian test function, the dt -> 0 kernel reproduces it
  SingleOscillatorParams params{1.0, 1.0, 1.0};
  KernelRequest req{params, 0.0, 40, 1};
  auto g = [](double s) { return Complex(std::exp(-(s - 0.5) * (s - 0.5) / 2.0)); };
  double dev = 0.0;
  for (double s = -2.0; s <= 2.0 + 1e-12; s += 0.4) {
    dev = std::max(dev, std::abs(apply_spectral_kernel(req, g, s) - g(s)));
  }
  CHECK(dev < 1e-4);
}

TEST_CASE("one-period phase for a real frequency") {
  SingleOscillatorParams params{1.0, 1.0, 1.0};
  KernelRequest full_period{params, 2.0 * M_PI, 40, 1};
  KernelRequest equal_time{params, 0.0, 40, 1};
  auto g = [](double s) { return Complex(std::exp(-s * s / 2.0), 0.3 * std::exp(-s * s)); };
  for (double s : {-1.0, 0.0, 0.7, 1.4}) {
    Complex evolved = apply_spectral_kernel(full_period, g, s);
    Complex base = apply_spectral_kernel(equal_time, g, s);
    CHECK(std::abs(evolved - std::exp(Complex(0.0, -M_PI)) * base) < 1e-4);
  }
}

TEST_CASE("causal damping shrinks the kernel at late times") {
  SingleOscillatorParams params{1.0, Complex(1.0, -0.05), 1.0};
  KernelRequest late{params, 50.0, 60, 1};
  KernelRequest early{params, 10.0, 60, 1};
  CHECK(kernel_sup_norm(late) < kernel_sup_norm(early));
}

TEST_CASE("caustic rejection and retarded precondition") {
  SingleOscillatorParams params{1.0, 1.0, 1.0};
  KernelRequest at_caustic{params, M_PI, 40, 1};
  CHECK_THROWS_AS(closed_form_kernel(at_caustic, 0.3, 0.1), CausticSingularity);
  KernelRequest backwards{params, -0.5, 40, 1};
  CHECK_THROWS_AS(spectral_kernel(backwards, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("semigroup property under contour quadrature") {
  double dev = 0.0;
  for (double s_to : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
    for (double s_from : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
      Complex composed = compose_closed_form(kDamped, 0.4, 0.35, s_to, s_from, 64);
      KernelRequest whole{kDamped, 0.75, 60, 1};
      dev = std::max(dev, std::abs(composed - closed_form_kernel(whole, s_to, s_from)));
    }
  }
  CHECK(dev < 1e-6);

  // composition of the exact kernel under quadrature is associative
  SingleOscillatorParams params = kDamped;
  Contour contour = contour_for(params.mass, params.omega);
  const GaussHermiteRule& rule = gauss_hermite(64);
  double alpha = 0.35;  // shared grid, spread to the widest factor's envelope
  std::vector<double> nodes;
  std::vector<Complex> weights;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    nodes.push_back(rule.nodes[i] / std::sqrt(alpha));
    weights.push_back(rule.scaled_weights[i] / std::sqrt(alpha) * contour.jacobian());
  }
  int n = static_cast<int>(nodes.size());
  KernelRequest r1{params, 0.3, 60, 1};
  Eigen::MatrixXcd k1(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k1(i, j) = closed_form_kernel(r1, nodes[i], nodes[j]);
  Eigen::VectorXcd w(n);
  for (int i = 0; i < n; ++i) w(i) = weights[i];
  Eigen::MatrixXcd left = (k1 * w.asDiagonal() * k1) * w.asDiagonal() * k1;
  Eigen::MatrixXcd right = k1 * w.asDiagonal() * (k1 * w.asDiagonal() * k1);
  CHECK((left - right).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("anti-holomorphic kernel is the conjugate partner") {
  KernelRequest req{kTwisted, 0.45, 40, 1};
  for (double s_to : {-1.5, 0.0, 0.8}) {
    for (double s_from : {-0.7, 0.3, 1.9}) {
      // conj of the phase-reversed holomorphic sum at swapped arguments
      Complex beta = contour_scale(req.params);
      double absb = std::abs(beta);
      std::vector<double> to = hermite_functions(req.m_max, absb * s_to);
      std::vector<double> from = hermite_functions(req.m_max, absb * s_from);
      Complex reversed = 0.0;
      for (int m = req.m_max; m >= 0; --m) {
        reversed += to[m] * std::exp(Complex(0.0, 1.0) * req.params.omega * (m + 0.5) * req.dt) *
                    from[m];
      }
      reversed *= beta;
      CHECK(std::abs(anti_spectral_kernel(req, s_to, s_from) - std::conj(reversed)) < 1e-10);
    }
  }
}

TEST_CASE("product kernel factorizes") {
  KernelRequest req{kDamped, 0.5, 25, 1};
  for (double s : {-1.0, 0.4}) {
    for (double sc : {-0.6, 1.1}) {
      Complex product = pt_product_kernel(req, s, sc, 0.2, -0.3);
      // direct double spectral sum over the product basis
      Complex beta = contour_scale(req.params);
      Complex beta_anti = std::conj(beta);
      double absb = std::abs(beta);
      std::vector<double> hol_to = hermite_functions(req.m_max, absb * s);
      std::vector<double> hol_from = hermite_functions(req.m_max, absb * 0.2);
      std::vector<double> anti_to = hermite_functions(req.m_max, absb * sc);
      std::vector<double> anti_from = hermite_functions(req.m_max, absb * -0.3);
      Complex direct = 0.0;
      for (int m = 0; m <= req.m_max; ++m) {
        for (int n = 0; n <= req.m_max; ++n) {
          Complex energy = req.params.omega * (m + 0.5) + std::conj(req.params.omega) * (n + 0.5);
          direct += hol_to[m] * hol_from[m] * anti_to[n] * anti_from[n] *
                    std::exp(Complex(0.0, -1.0) * energy * req.dt);
        }
      }
      direct *= beta * beta_anti;
      CHECK(std::abs(product - direct) < 1e-10);
    }
  }
}

TEST_CASE("first-order slice composition converges like 1/N") {
  SingleOscillatorParams params{1.0, Complex(1.0, -1.0), 1.0};
  KernelRequest req{params, 1.0 / std::abs(params.omega), 70, 1};
  std::vector<int> counts{8, 16, 32, 64};
  SliceConvergence conv = slice_convergence(req, counts, 320);
  for (std::size_t i = 1; i < conv.errors.size(); ++i) CHECK(conv.errors[i] < conv.errors[i - 1]);
  CHECK(conv.fitted_order == doctest::Approx(1.0).epsilon(0.2));

  // one slice of a tiny interval acts as a smeared delta: applied to a
  // Gaussian test vector through the quadrature weights it reproduces the
  // test function up to O(dt)
  KernelRequest tiny{params, 1e-3, 70, 1};
  tiny.slices = 1;
  SliceCompositionReport rep = compose_slices(tiny, 256);
  Contour contour = contour_for(params.mass, params.omega);
  Complex beta = contour_scale(params);
  double absb = std::abs(beta);
  int n = static_cast<int>(rep.nodes.size());
  const GaussHermiteRule& rule = gauss_hermite(n);
  // recover the grid stretch used by the composition from the node spacing
  double stretch = rep.nodes[n / 2] / rule.nodes[n / 2];
  Eigen::VectorXcd g(n), weights(n);
  for (int i = 0; i < n; ++i) {
    double rho = absb * rep.nodes[i];
    g(i) = std::exp(-(rho - 0.3) * (rho - 0.3) / 2.0);
    weights(i) = rule.scaled_weights[i] * stretch * contour.jacobian();
  }
  Eigen::VectorXcd smeared = rep.composed * weights.asDiagonal() * g;
  // the delta-width envelope confines the grid, so compare well inside it
  double window = 0.5 * rep.nodes.back();
  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(rep.nodes[i]) > window) continue;
    dev = std::max(dev, std::abs(smeared(i) - g(i)));
  }
  CHECK(dev < 5e-3);

  KernelRequest bad = req;
  bad.slices = 12;
  CHECK_THROWS_AS(compose_slices(bad), std::invalid_argument);
}

TEST_CASE("two-point function from the discretized generating functional") {
  SingleOscillatorParams params{1.0, Complex(1.0, -0.05), 1.0};

  Complex equal = two_point_from_w(params, 0.7, 0.7);
  Complex oracle_equal = params.hbar / (2.0 * params.mass * params.omega);
  CHECK(std::abs(equal - oracle_equal) < 1e-6);

  Complex split = two_point_from_w(params, 1.5, 0.5);
  Complex oracle_split =
      oracle_equal * std::exp(Complex(0.0, -1.0) * params.omega * 1.0);
  CHECK(std::abs(split - oracle_split) < 1e-6);

  // time-ordering symmetry
  CHECK(std::abs(split - two_point_from_w(params, 0.5, 1.5)) < 1e-12);

  // lightly damped example: phase ~ -1 rad, slightly shrunk magnitude
  SingleOscillatorParams light{1.0, Complex(1.0, -0.01), 1.0};
  Complex value = two_point_from_w(light, 1.0, 0.0);
  CHECK(std::arg(value / (light.hbar / (2.0 * light.mass * light.omega))) ==
        doctest::Approx(-1.0).epsilon(0.02));
  CHECK(std::abs(value) < std::abs(light.hbar / (2.0 * light.mass * light.omega)));

  SingleOscillatorParams undamped{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(two_point_from_w(undamped, 1.0, 0.0), std::invalid_argument);
}
