#pragma once

#include "ptpu/hermite.hpp"
#include "ptpu/params.hpp"

namespace ptpu {

/// Ray zeta(s) = e^{i theta} s chosen so M Omega zeta(s)^2 = |M Omega| s^2 >= 0,
/// which keeps Gaussian-weighted integrals convergent for negative or complex
/// mass.
struct Contour {
  double theta = 0.0;
  Complex point(double s) const { return std::polar(1.0, theta) * s; }
  Complex jacobian() const { return std::polar(1.0, theta); }
};

/// theta = -arg(M Omega)/2 (principal value). Throws ZeroScale on M*Omega == 0.
Contour contour_for(const Complex& mass, const Complex& omega);

/// beta = principal sqrt(M Omega / hbar); |beta| e^{-i theta}. On the contour
/// the dimensionless argument is rho(s) = |beta| s, real, with rho >= 0 for
/// s >= 0 (the branch recorded in output conventions).
Complex contour_scale(const SingleOscillatorParams& params);

enum class Side { left, right };

struct EigenfunctionSpec {
  SingleOscillatorParams params;
  int index = 0;
  Side side = Side::right;
};

/// sqrt(beta) phi_m(rho(s)) on the contour. The left side is the conjugate
/// composition, which coincides with the right side pointwise on-contour
/// because the Hermite functions are real at real argument.
Complex eval_eigenfunction(const EigenfunctionSpec& spec, double s);

/// Gauss-Hermite quadrature of the left-right pairing along the rotated
/// contour; approaches delta_{m,m'}. Throws QuadratureUnderresolved when
/// doubling the node count moves the result by more than 1e-8.
Complex biortho_inner(const SingleOscillatorParams& params, int m, int m_prime, int nodes = 64);

/// Left-right ground-state pairing over the four contours (zeta1, zeta2 and
/// their conjugates) as a product of one-dimensional factors; approaches 1.
Complex ground_state_norm(const TwoOscillatorParams& params, int nodes = 64);

/// The same integral evaluated as a single non-factorized 4D quadrature;
/// cross-check only (cost grows as nodes^4).
Complex ground_state_norm_full4d(const TwoOscillatorParams& params, int nodes_per_axis = 32);

/// Momentum-space eigenfunction along the p-contour (p^2/(M Omega hbar^2...) real
/// and non-negative), normalized against dp/(2 pi hbar).
Complex momentum_eigenfunction(const SingleOscillatorParams& params, int m, double sp);

/// Max pointwise deviation over |sp| <= 4 between the numerically
/// Fourier-transformed position eigenfunction and (-i)^m times the
/// momentum-space eigenfunction. Requires m <= 4.
double fourier_pair_check(const SingleOscillatorParams& params, int m, int nodes = 96);

}  // namespace ptpu
