#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptpu/jet_polynomial.hpp"
#include "ptpu/params.hpp"

namespace ptpu {

/// The linear map between (Q, Qddot) and (Q1, Q2):
///   forward = [[1, 1], [-Omega1^2, -Omega2^2]], inverse its exact inverse.
/// The same matrices relate (Qdot, Qdddot) to (Q1dot, Q2dot).
struct TransformPair {
  Eigen::Matrix2cd forward;
  Eigen::Matrix2cd inverse;
};

TransformPair build_transform(const TwoOscillatorParams& params);

/// (M/2)(q1^2 - Omega^2 q0^2) for a single coordinate.
DerivativePolynomial oscillator_lagrangian(const Complex& mass, const Complex& omega);

/// Fourth-derivative Lagrangian obtained by rewriting the two-oscillator
/// Lagrangian in Q and its time derivatives (direct bracket expansion).
DerivativePolynomial pu_lagrangian(const TwoOscillatorParams& params);

/// The partially-integrated equivalent split into (M1+M2)/2 and (M1-M2)/2
/// blocks, total-derivative terms included. Differs from pu_lagrangian by a
/// total time derivative only.
DerivativePolynomial pu_lagrangian_partial_integrated(const TwoOscillatorParams& params);

struct BenderMannheimForm {
  Complex gamma;                                // M1/(Omega1^2 - Omega2^2)
  DerivativePolynomial lagrangian;              // (gamma/2)(q2^2 - (W1+W2) q1^2 + W1 W2 q0^2)
};

/// Requires M1 = -M2 (relative tolerance on |M1 + M2|); otherwise throws
/// NotBenderMannheimCase.
BenderMannheimForm bender_mannheim(const TwoOscillatorParams& params, double tol = 1e-12);

/// Euler-Lagrange expression of pu_lagrangian viewed as a polynomial in the
/// symbol x = d^2/dt^2 acting on Q, divided by (x + Omega1^2)(x + Omega2^2).
struct ElFactorization {
  std::vector<Complex> quotient;    // ascending coefficients in x
  std::vector<Complex> remainder;   // ascending, degree < 2
  double remainder_magnitude;       // max |remainder coefficient|
  double leading_magnitude;         // |leading dividend coefficient|
};

ElFactorization pu_el_factorization(const TwoOscillatorParams& params);

/// Initial data for the fourth-order equation: (Q, Qdot, Qddot, Qdddot).
struct ClassicalState {
  std::array<Complex, 4> jets{};
  double time = 0.0;
};

struct TrajectorySample {
  double t;
  Complex q, qdot, qddot, qdddot;  // fourth-order route
  Complex q1, q1dot, q2, q2dot;    // two-oscillator route
  double dev_q, dev_qddot;         // route disagreement at this sample
};

struct TrajectoryReport {
  std::vector<TrajectorySample> samples;
  double max_dev_q = 0.0;       // |Q - (Q1+Q2)|
  double max_dev_qdot = 0.0;    // |Qdot - (Q1dot+Q2dot)|
  double max_dev_qddot = 0.0;   // |Qddot + W1 Q1 + W2 Q2|
  double max_dev_qdddot = 0.0;  // |Qdddot + W1 Q1dot + W2 Q2dot|

  std::string to_csv() const;
};

/// Integrates (a) the fourth-order equation and (b) the two second-order
/// oscillators seeded through the inverse transform, both with fixed-step
/// RK4, and reports the maximum deviations between the two routes.
/// Throws StepSizeRejected when dt * max(|Omega1|, |Omega2|) > 0.1.
TrajectoryReport integrate_classical(const TwoOscillatorParams& params,
                                     const ClassicalState& initial, double t_end, double dt);

/// Exact modal solution of the fourth-order equation for the given initial
/// jets, evaluated at time t (valid for complex frequencies).
Complex exact_fourth_order_solution(const TwoOscillatorParams& params,
                                    const ClassicalState& initial, double t);

/// Integrator convergence order: least-squares slope of log(max |Q_numeric -
/// Q_exact|) against log(dt). 4 for RK4. The route-vs-route deviations cannot
/// carry this measurement: the two first-order systems are exactly conjugate
/// under the transform, so both discrete trajectories agree to roundoff at
/// any step size.
double trajectory_convergence_slope(const TwoOscillatorParams& params,
                                    const ClassicalState& initial, double t_end,
                                    std::span<const double> dts);

}  // namespace ptpu
