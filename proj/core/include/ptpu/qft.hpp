#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ptpu/complex_format.hpp"

namespace ptpu {

using Matrix4 = Eigen::Matrix4cd;

/// Dirac-representation gamma matrices with metric (+,-,-,-) and the charge
/// conjugation matrix C = i gamma^2 gamma^0 satisfying
/// C = -C^T = -C^+ = -C^{-1} and gamma^{mu T} = -C gamma^mu C^{-1}, all with
/// exact entries.
struct GammaBasis {
  std::array<Matrix4, 4> gamma;
  Matrix4 charge_conjugation;

  static const GammaBasis& instance();
};

struct FourMomentum {
  Complex p0, p1, p2, p3;
  Complex squared() const { return p0 * p0 - p1 * p1 - p2 * p2 - p3 * p3; }
};

/// gamma^mu p_mu with the (+,-,-,-) metric.
Matrix4 feynman_slash(const FourMomentum& p);

/// One exchanged Klein-Gordon channel: field renormalization Z, complex mass
/// (Im M <= 0 by the causal convention; see causal_mass_convention), coupling g.
struct ScalarChannel {
  Complex z{1.0};
  Complex m{1.0};
  Complex g{1.0};

  Complex m_squared() const { return m * m; }
  Complex weight() const { return g * g / z; }  // g^2 Z^{-1}
};

/// True when Im(M) <= 0; a convention check, not a validity condition.
bool causal_mass_convention(const ScalarChannel& ch);

/// Z^{-1}/(p^2 - M^2); the anti-causal partner evaluates with conjugated Z, M.
/// Throws OnShellPole at |p^2 - M^2| < 1e-12 max(1, |M|^2).
Complex scalar_propagator(const Complex& p_sq, const ScalarChannel& ch, bool anti_causal = false);

/// (pslash + M)/(p^2 - M^2); (pslash - M) * result = identity.
Matrix4 dirac_propagator(const FourMomentum& p, const Complex& mass);

/// The second-order exchange kernel sum_i g_i^2 Z_i^{-1}/(p^2 - M_i^2) with its
/// single-fraction form (numerator coefficients over prod (p^2 - M_i^2)).
struct AmplitudeKernel {
  Complex sum{};
  std::vector<Complex> numerator;          // ascending coefficients in p^2
  std::vector<Complex> denominator_roots;  // the M_i^2

  Complex single_fraction_at(const Complex& p_sq) const;
};

/// Throws DegenerateMasses when two channel masses coincide (the
/// single-fraction denominator would be non-simple).
AmplitudeKernel combined_amplitude_kernel(std::span<const ScalarChannel> channels,
                                          const Complex& p_sq);

/// Solves g1^2 Z1^{-1} + g2^2 Z2^{-1} = 0 for g2^2.
Complex pauli_villars_solve(const ScalarChannel& ch1, const Complex& z2, const Complex& m2);

/// Least-squares slope of log|kernel| against log p^2 over the grid;
/// -1 for a plain propagator, -2 once the leading constraint holds.
double falloff_exponent(std::span<const ScalarChannel> channels,
                        std::span<const Complex> p_sq_grid);

/// Geometric p^2 grid spanning `decades` decades starting one decade above
/// max |M_i|^2.
std::vector<Complex> geometric_psq_grid(std::span<const ScalarChannel> channels, int points = 40,
                                        double decades = 3.5);

struct DoubleConstraintReport {
  Complex constraint1;          // g1^2 Z1^{-1} + g2^2 Z2^{-1}
  Complex constraint2;          // M2^2 g1^2 Z1^{-1} + M1^2 g2^2 Z2^{-1}
  double amplitude_sup_norm;    // over a fixed p^2 test grid
  bool vanishes;                // both residuals < 1e-12
};

DoubleConstraintReport double_constraint_check(const ScalarChannel& ch1, const ScalarChannel& ch2);

/// |g^2 Z^{-1}/(p^2-M^2) - (g/sqrt(Z))^2/(p^2-M^2)|: shifting the field
/// renormalization into the coupling is exact for any square-root branch.
double rescaling_equivalence(const ScalarChannel& ch, const Complex& p_sq);

}  // namespace ptpu
