#pragma once

#include <stdexcept>

namespace ptpu {

/// Thrown when |Omega1^2 - Omega2^2| falls below the degeneracy tolerance.
struct DegenerateFrequencies : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when M1 + M2 != 0 but the Bender-Mannheim reduction is requested.
struct NotBenderMannheimCase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when an operation would produce a jet variable above the configured order.
struct JetOrderOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a substitution image is not linear in the new coordinate's jets.
struct NonlinearSubstitution : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the classical integrator step violates dt * max|Omega| <= 0.1.
struct StepSizeRejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by contour construction when M * Omega == 0.
struct ZeroScale : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when doubling the quadrature node count moves the result by more
/// than the stability threshold.
struct QuadratureUnderresolved : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by the closed-form oscillator kernel at sin(Omega dt) ~ 0.
struct CausticSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when time-grid refinement fails to stabilize the Green's function.
struct GridUnderresolved : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a propagator is evaluated at p^2 = M^2.
struct OnShellPole : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by the single-fraction amplitude form when M1^2 = M2^2.
struct DegenerateMasses : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ptpu
