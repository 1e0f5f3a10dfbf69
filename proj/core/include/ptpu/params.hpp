#pragma once

#include <complex>

#include "ptpu/complex_format.hpp"

namespace ptpu {

/// One oscillator: complex mass and angular frequency, real hbar.
struct SingleOscillatorParams {
  Complex mass{1.0};
  Complex omega{1.0};
  double hbar = 1.0;

  void validate() const;
};

/// The two-oscillator system behind the fourth-order model.
/// Frequencies must be non-degenerate: |Omega1^2 - Omega2^2| >=
/// 1e-9 * max(|Omega1|^2, |Omega2|^2), guarding the 1/(Omega1^2-Omega2^2)^2
/// amplification in the converted Lagrangian.
struct TwoOscillatorParams {
  Complex mass1{1.0};
  Complex mass2{1.0};
  Complex omega1{1.0};
  Complex omega2{2.0};
  double hbar = 1.0;

  static constexpr double kDegeneracyTol = 1e-9;

  void validate() const;
  Complex omega_sq_gap() const { return omega1 * omega1 - omega2 * omega2; }

  SingleOscillatorParams first() const { return {mass1, omega1, hbar}; }
  SingleOscillatorParams second() const { return {mass2, omega2, hbar}; }
};

}  // namespace ptpu
