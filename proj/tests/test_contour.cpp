#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ptpu/contour.hpp"
#include "ptpu/errors.hpp"

using namespace ptpu;

TEST_CASE("contour phases") {
  CHECK(contour_for(1.0, 1.0).theta == 0.0);

  Contour rotated = contour_for(-1.0, 1.0);
  CHECK(rotated.theta == doctest::Approx(-M_PI / 2).epsilon(1e-15));
  // M Omega zeta(s)^2 = s^2 on the rotated ray
  Complex z = rotated.point(2.0);
  CHECK(std::abs(Complex(-1.0) * z * z - Complex(4.0)) < 1e-14);

  CHECK(contour_for(Complex(0.0, 1.0), 1.0).theta == doctest::Approx(-M_PI / 4).epsilon(1e-15));
  CHECK_THROWS_AS(contour_for(0.0, 1.0), ZeroScale);
}

TEST_CASE("eigenfunction values on-contour") {
  SingleOscillatorParams params{1.0, 1.0, 1.0};
  EigenfunctionSpec ground{params, 0, Side::right};
  CHECK(std::abs(eval_eigenfunction(ground, 0.0) - std::pow(M_PI, -0.25)) < 1e-15);

  EigenfunctionSpec first{params, 1, Side::right};
  CHECK(eval_eigenfunction(first, 0.0) == Complex(0.0));

  // left side is the conjugate composition; identical pointwise on-contour
  SingleOscillatorParams rotated{-1.0, 1.0, 1.0};
  for (double s : {-2.0, -0.3, 0.0, 0.8, 2.5}) {
    EigenfunctionSpec l{rotated, 3, Side::left};
    EigenfunctionSpec r{rotated, 3, Side::right};
    CHECK(eval_eigenfunction(l, s) == eval_eigenfunction(r, s));
  }
}

TEST_CASE("schroedinger residual in the dimensionless variable") {
  // (1/2)(-phi'' + rho^2 phi) = (m + 1/2) phi, finite-difference second
  // derivative with step 1e-3
  double h = 1e-3;
  for (int m = 0; m <= 2; ++m) {
    double max_residual = 0.0;
    for (double rho = -3.0; rho <= 3.0 + 1e-12; rho += 0.25) {
      double phi = hermite_function(m, rho);
      double lap = (hermite_function(m, rho + h) - 2.0 * phi + hermite_function(m, rho - h)) /
                   (h * h);
      double residual = 0.5 * (-lap + rho * rho * phi) - (m + 0.5) * phi;
      max_residual = std::max(max_residual, std::abs(residual));
    }
    CHECK(max_residual < 1e-6);
  }
}

TEST_CASE("bi-orthonormality by quadrature") {
  SingleOscillatorParams plain{1.0, 1.0, 1.0};
  CHECK(std::abs(biortho_inner(plain, 0, 0) - Complex(1.0)) < 1e-10);

  SingleOscillatorParams negative{-1.0, 1.0, 1.0};
  CHECK(std::abs(biortho_inner(negative, 0, 2)) < 1e-10);

  SingleOscillatorParams complex_params{Complex(1.0, 0.2), Complex(1.0, -0.1), 1.0};
  CHECK(std::abs(biortho_inner(complex_params, 3, 3) - Complex(1.0)) < 1e-8);

  // full delta pattern for the three parameter sets
  for (const SingleOscillatorParams& params : {plain, negative, complex_params}) {
    for (int m = 0; m <= 5; ++m) {
      for (int mp = 0; mp <= 5; ++mp) {
        Complex value = biortho_inner(params, m, mp);
        double expected = (m == mp) ? 1.0 : 0.0;
        CHECK(std::abs(value - expected) < 1e-8);
      }
    }
  }

  CHECK_THROWS_AS(biortho_inner(plain, 0, 0, 16), std::invalid_argument);
}

TEST_CASE("ground-state norm") {
  TwoOscillatorParams plain{1.0, 1.0, 1.0, 2.0, 1.0};
  CHECK(std::abs(ground_state_norm(plain) - Complex(1.0)) < 1e-10);

  // fourth-order-model sign pattern: opposite-sign masses
  TwoOscillatorParams pu{1.0, -1.0, 1.0, 2.0, 1.0};
  CHECK(std::abs(ground_state_norm(pu) - Complex(1.0)) < 1e-10);

  // hbar rescaling leaves the normalized pairing at one
  TwoOscillatorParams scaled = pu;
  scaled.hbar = 2.0;
  CHECK(std::abs(ground_state_norm(scaled) - Complex(1.0)) < 1e-10);

  // complex masses and frequencies
  TwoOscillatorParams twisted{Complex(1.0, 0.3), Complex(-0.8, 0.1), Complex(1.0, -0.1),
                              Complex(1.7, 0.2), 1.0};
  CHECK(std::abs(ground_state_norm(twisted) - Complex(1.0)) < 1e-10);

  // non-factorized 4D quadrature agrees with the factorized product
  CHECK(std::abs(ground_state_norm_full4d(pu, 32) - ground_state_norm(pu)) < 1e-8);
}

TEST_CASE("fourier pairs along rotated contours") {
  SingleOscillatorParams plain{1.0, 1.0, 1.0};
  CHECK(fourier_pair_check(plain, 0) < 1e-8);
  CHECK(fourier_pair_check(plain, 1) < 1e-7);

  SingleOscillatorParams negative{-1.0, 1.0, 1.0};
  CHECK(fourier_pair_check(negative, 2) < 1e-7);

  SingleOscillatorParams complex_params{Complex(1.0, 0.2), Complex(1.0, -0.1), 1.0};
  CHECK(fourier_pair_check(complex_params, 1) < 1e-7);

  CHECK_THROWS_AS(fourier_pair_check(plain, 5), std::invalid_argument);
}

TEST_CASE("smeared completeness on a test function") {
  // resolution of identity through 20 basis functions applied to a Gaussian
  SingleOscillatorParams params{-1.0, 1.0, 1.0};
  Contour contour = contour_for(params.mass, params.omega);
  Complex beta = contour_scale(params);
  double absb = std::abs(beta);
  auto g = [&](double s) {
    double rho = absb * s;
    return Complex(std::exp(-(rho - 0.4) * (rho - 0.4) / 2.0));
  };
  int m_terms = 20;
  double max_dev = 0.0;
  for (double s = -2.0; s <= 2.0 + 1e-12; s += 0.25) {
    Complex reconstructed = 0.0;
    for (int m = 0; m < m_terms; ++m) {
      EigenfunctionSpec left{params, m, Side::left};
      EigenfunctionSpec right{params, m, Side::right};
      Complex coeff = integrate_gauss_hermite(
          [&](double u) { return eval_eigenfunction(left, u) * g(u) * contour.jacobian(); },
          absb * absb, 96);
      reconstructed += eval_eigenfunction(right, s) * coeff;
    }
    max_dev = std::max(max_dev, std::abs(reconstructed - g(s)));
  }
  CHECK(max_dev < 1e-6);
}
