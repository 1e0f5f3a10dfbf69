#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "ptpu/errors.hpp"
#include "ptpu/qft.hpp"

using namespace ptpu;

namespace {

std::mt19937_64 rng(314159);

Complex random_complex(double scale = 1.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  return Complex(d(rng), d(rng));
}

FourMomentum random_momentum() {
  return {random_complex(2.0), random_complex(2.0), random_complex(2.0), random_complex(2.0)};
}

}  // namespace

TEST_CASE("gamma algebra is exact") {
  const GammaBasis& basis = GammaBasis::instance();
  const double metric[4] = {1.0, -1.0, -1.0, -1.0};
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      Matrix4 anti = basis.gamma[mu] * basis.gamma[nu] + basis.gamma[nu] * basis.gamma[mu];
      Matrix4 expected = (mu == nu) ? Matrix4(2.0 * metric[mu] * Matrix4::Identity())
                                    : Matrix4(Matrix4::Zero());
      CHECK((anti - expected).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }

  const Matrix4& c = basis.charge_conjugation;
  CHECK((c + c.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((c + c.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((c * c + Matrix4::Identity()).cwiseAbs().maxCoeff() <= 1e-14);  // C^{-1} = -C
  for (int mu = 0; mu < 4; ++mu) {
    // gamma^T = -C gamma C^{-1} = +C gamma C since C^{-1} = -C
    Matrix4 lhs = basis.gamma[mu].transpose();
    Matrix4 rhs = c * basis.gamma[mu] * c;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("scalar propagator") {
  CHECK(scalar_propagator(Complex(2.0), {1.0, 1.0, 1.0}) == Complex(1.0));
  // Z = -1, M = 2, p^2 = 0: (-1)^{-1} / (0 - 4) = 0.25
  CHECK(std::abs(scalar_propagator(Complex(0.0), {-1.0, 2.0, 1.0}) - Complex(0.25)) < 1e-15);

  // anti-causal partner: conjugate of the causal value at conjugate arguments
  ScalarChannel ch{1.0, Complex(1.0, -0.1), 1.0};
  Complex p_sq(2.0, 0.5);
  Complex anti = scalar_propagator(p_sq, ch, true);
  CHECK(std::abs(anti - std::conj(scalar_propagator(std::conj(p_sq), ch))) < 1e-15);

  CHECK_THROWS_AS(scalar_propagator(Complex(1.0), {1.0, 1.0, 1.0}), OnShellPole);
  CHECK(causal_mass_convention(ch));
  CHECK_FALSE(causal_mass_convention({1.0, Complex(1.0, 0.1), 1.0}));
}

TEST_CASE("dirac propagator") {
  // massless rest-frame momentum: pslash/p^2 = gamma^0
  FourMomentum rest{1.0, 0.0, 0.0, 0.0};
  Matrix4 prop = dirac_propagator(rest, 0.0);
  CHECK((prop - GammaBasis::instance().gamma[0]).cwiseAbs().maxCoeff() <= 1e-15);

  for (int trial = 0; trial < 50; ++trial) {
    FourMomentum p = random_momentum();
    Complex mass = random_complex(1.5);
    Complex gap = p.squared() - mass * mass;
    if (std::abs(gap) < 1e-3) continue;

    // Clifford identity (pslash - M)(pslash + M) = (p^2 - M^2) I
    Matrix4 lhs = (feynman_slash(p) - mass * Matrix4::Identity()) *
                  (feynman_slash(p) + mass * Matrix4::Identity());
    CHECK((lhs - gap * Matrix4::Identity()).cwiseAbs().maxCoeff() <= 1e-13 * std::abs(gap) + 1e-13);

    // inverse property of the propagator
    Matrix4 residual = (feynman_slash(p) - mass * Matrix4::Identity()) *
                           dirac_propagator(p, mass) -
                       Matrix4::Identity();
    CHECK(residual.cwiseAbs().maxCoeff() <= 1e-12);
  }

  // Grassmann consistency of the C (pslash + M) kernel block:
  // [C(pslash+M)]^T = -C(-pslash+M)
  const Matrix4& c = GammaBasis::instance().charge_conjugation;
  for (int trial = 0; trial < 10; ++trial) {
    FourMomentum p = random_momentum();
    Complex mass = random_complex(1.5);
    Matrix4 block = c * (feynman_slash(p) + mass * Matrix4::Identity());
    FourMomentum minus{-p.p0, -p.p1, -p.p2, -p.p3};
    Matrix4 flipped = c * (feynman_slash(minus) + mass * Matrix4::Identity());
    CHECK((block.transpose() + flipped).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("combined amplitude kernel and its single-fraction form") {
  ScalarChannel ch1{1.0, 1.0, 1.0};
  ScalarChannel ch2{-1.0, 2.0, 1.0};
  std::vector<ScalarChannel> channels{ch1, ch2};

  AmplitudeKernel kernel = combined_amplitude_kernel(channels, Complex(0.0));
  CHECK(std::abs(kernel.sum - Complex(-0.75)) < 1e-15);
  // numerator: p^2 (w1 + w2) - (M2^2 w1 + M1^2 w2) = 0 p^2 - 3
  REQUIRE(kernel.numerator.size() == 2);
  CHECK(std::abs(kernel.numerator[1] - Complex(0.0)) < 1e-15);
  CHECK(std::abs(kernel.numerator[0] - Complex(-3.0)) < 1e-15);
  CHECK(std::abs(kernel.single_fraction_at(Complex(0.0)) - Complex(-0.75)) < 1e-15);

  // pointwise agreement at random complex p^2
  for (int trial = 0; trial < 100; ++trial) {
    Complex p_sq = random_complex(8.0);
    if (std::abs(p_sq - 1.0) < 1e-2 || std::abs(p_sq - 4.0) < 1e-2) continue;
    AmplitudeKernel k = combined_amplitude_kernel(channels, p_sq);
    CHECK(std::abs(k.sum - k.single_fraction_at(p_sq)) <= 1e-12 * std::max(1.0, std::abs(k.sum)));
  }

  // single channel reduces to the plain weighted propagator
  std::vector<ScalarChannel> single{ch1};
  AmplitudeKernel k1 = combined_amplitude_kernel(single, Complex(3.0));
  CHECK(std::abs(k1.sum - Complex(0.5)) < 1e-15);
  CHECK(std::abs(k1.single_fraction_at(Complex(3.0)) - Complex(0.5)) < 1e-15);

  std::vector<ScalarChannel> clashing{ch1, ScalarChannel{1.0, 1.0, 2.0}};
  CHECK_THROWS_AS(combined_amplitude_kernel(clashing, Complex(0.5)), DegenerateMasses);
}

TEST_CASE("cancellation constraint solutions") {
  // opposite-sign renormalizations: real coupling
  CHECK(std::abs(pauli_villars_solve({1.0, 1.0, 1.0}, Complex(-1.0), Complex(2.0)) -
                 Complex(1.0)) < 1e-15);
  // equal-sign renormalizations force a purely imaginary second coupling
  CHECK(std::abs(pauli_villars_solve({1.0, 1.0, 1.0}, Complex(1.0), Complex(2.0)) -
                 Complex(-1.0)) < 1e-15);
  // trivial first channel
  CHECK(pauli_villars_solve({1.0, 1.0, 0.0}, Complex(-1.0), Complex(2.0)) == Complex(0.0));

  // the constraint removes the p^2 numerator coefficient symbolically
  ScalarChannel ch1{1.0, 1.0, 1.0};
  Complex g2_squared = pauli_villars_solve(ch1, Complex(-1.0), Complex(2.0));
  ScalarChannel ch2{-1.0, 2.0, std::sqrt(g2_squared)};
  std::vector<ScalarChannel> constrained{ch1, ch2};
  AmplitudeKernel k = combined_amplitude_kernel(constrained, Complex(0.3));
  CHECK(std::abs(k.numerator.back()) < 1e-12);
}

TEST_CASE("falloff slopes") {
  ScalarChannel ch1{1.0, 1.0, 1.0};
  ScalarChannel unconstrained2{-1.0, 2.0, Complex(0.0, 1.3)};  // generic weights
  std::vector<ScalarChannel> generic{ch1, unconstrained2};
  std::vector<Complex> grid = geometric_psq_grid(generic);
  CHECK(falloff_exponent(generic, grid) == doctest::Approx(-1.0).epsilon(0.05));

  ScalarChannel pv2{-1.0, 2.0, std::sqrt(pauli_villars_solve(ch1, Complex(-1.0), Complex(2.0)))};
  std::vector<ScalarChannel> constrained{ch1, pv2};
  CHECK(falloff_exponent(constrained, geometric_psq_grid(constrained)) ==
        doctest::Approx(-2.0).epsilon(0.025));

  std::vector<ScalarChannel> single{ch1};
  CHECK(falloff_exponent(single, geometric_psq_grid(single)) ==
        doctest::Approx(-1.0).epsilon(0.05));
}

TEST_CASE("double constraint") {
  // equal masses: both constraints coincide, amplitude vanishes identically
  ScalarChannel ch1{1.0, 1.0, 1.0};
  ScalarChannel ch2{1.0, 1.0, Complex(0.0, 1.0)};  // g^2 = -1
  // degenerate masses are fine here; the check never forms the single fraction
  DoubleConstraintReport report = double_constraint_check(ch1, ch2);
  CHECK(std::abs(report.constraint1) < 1e-12);
  CHECK(std::abs(report.constraint2) < 1e-12);
  CHECK(report.vanishes);
  CHECK(report.amplitude_sup_norm < 1e-10);

  // distinct masses with only the first constraint satisfied
  ScalarChannel far{1.0, 2.0, Complex(0.0, 1.0)};
  DoubleConstraintReport partial = double_constraint_check(ch1, far);
  CHECK(std::abs(partial.constraint1) < 1e-12);
  CHECK(std::abs(partial.constraint2 - Complex(3.0)) < 1e-12);  // (M2^2 - M1^2) w1
  CHECK_FALSE(partial.vanishes);

  // all couplings zero: trivially vanishing
  DoubleConstraintReport trivial =
      double_constraint_check({1.0, 1.0, 0.0}, {2.0, 2.0, 0.0});
  CHECK(trivial.vanishes);
  CHECK(trivial.amplitude_sup_norm == 0.0);
}

TEST_CASE("two-channel kernel is invariant under shifting Z into the couplings") {
  // (Z_i, g_i) channels and (1, g_i / sqrt(Z_i)) channels give the same kernel
  ScalarChannel a1{Complex(-1.0, 0.2), Complex(1.0, -0.05), Complex(0.8, 0.1)};
  ScalarChannel a2{Complex(0.5, -0.3), Complex(2.0, -0.1), Complex(1.2, -0.6)};
  ScalarChannel b1{1.0, a1.m, a1.g / std::sqrt(a1.z)};
  ScalarChannel b2{1.0, a2.m, a2.g / std::sqrt(a2.z)};
  std::vector<ScalarChannel> with_z{a1, a2};
  std::vector<ScalarChannel> rescaled{b1, b2};
  for (int trial = 0; trial < 40; ++trial) {
    Complex p_sq = random_complex(6.0) + Complex(9.0, 0.0);
    Complex lhs = combined_amplitude_kernel(with_z, p_sq).sum;
    Complex rhs = combined_amplitude_kernel(rescaled, p_sq).sum;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("rescaling the renormalization into the coupling") {
  // Z = -1, g = 1, M = 1, p^2 = 3: both forms give -0.5
  ScalarChannel ch{-1.0, 1.0, 1.0};
  Complex direct = ch.weight() * scalar_propagator(Complex(3.0), {1.0, ch.m, 1.0});
  CHECK(std::abs(direct - Complex(-0.5)) < 1e-15);
  CHECK(rescaling_equivalence(ch, Complex(3.0)) < 1e-15);

  CHECK(rescaling_equivalence({1.0, 1.0, 1.0}, Complex(3.0)) == 0.0);

  for (int trial = 0; trial < 30; ++trial) {
    ScalarChannel random_ch{random_complex(2.0), random_complex(1.5), random_complex(2.0)};
    if (std::abs(random_ch.z) < 0.1) continue;
    Complex p_sq = random_complex(6.0) + Complex(8.0, 0.0);
    CHECK(rescaling_equivalence(random_ch, p_sq) <= 1e-12);
  }
}
