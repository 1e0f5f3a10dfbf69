#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptpu/contour.hpp"
#include "ptpu/params.hpp"

namespace ptpu {

/// Retarded evolution kernel request. dt >= 0 (the step factor theta(t'-t) is
/// represented by rejecting negative dt); decaying-kernel behavior at large dt
/// needs Im(omega) < 0 so that Im(E_m) < 0.
struct KernelRequest {
  SingleOscillatorParams params;
  double dt = 0.0;
  int m_max = 60;
  int slices = 1;

  void validate() const;
};

/// Truncated spectral sum  beta * sum_m phi_m(rho') e^{-i Omega (m+1/2) dt} phi_m(rho)
/// evaluated at contour parameters s_to, s_from.
Complex spectral_kernel(const KernelRequest& req, double s_to, double s_from);

/// Anti-holomorphic partner: conjugate scale and conjugate spectrum.
Complex anti_spectral_kernel(const KernelRequest& req, double s_to, double s_from);

/// Product kernel on the doubled configuration space; factorizes by
/// construction into a holomorphic and an anti-holomorphic factor.
Complex pt_product_kernel(const KernelRequest& req, double s_to, double sc_to, double s_from,
                          double sc_from);

/// Closed-form oscillator kernel analytically continued in M and Omega and
/// evaluated on-contour. The square-root prefactor branch is tracked
/// continuously from dt -> 0+ with the causal (Omega - i0) rule at caustics.
/// Throws CausticSingularity when |sin(Omega dt)| < 1e-8.
Complex closed_form_kernel(const KernelRequest& req, double s_to, double s_from);

/// The kernel applied to a test function along the contour:
/// sum_m phi_m(s_to) e^{-i Omega (m+1/2) dt} <phi_m, f>. Stable at dt = 0,
/// where it reproduces f (smeared delta).
Complex apply_spectral_kernel(const KernelRequest& req, const std::function<Complex(double)>& f,
                              double s_to, int nodes = 96);

/// Spectral kernel evaluated on a full node grid (columns: from, rows: to).
Eigen::MatrixXcd spectral_kernel_matrix(const KernelRequest& req, std::span<const double> nodes);

/// Quadrature composition K(dt1) o K(dt2) of two closed-form kernels along the
/// contour; equals K(dt1 + dt2) for the exact kernel. Throws
/// QuadratureUnderresolved when the composed envelope decays too weakly for
/// Gauss-Hermite nodes (real spectra need Im(omega) < 0 here).
Complex compose_closed_form(const SingleOscillatorParams& params, double dt1, double dt2,
                            double s_to, double s_from, int nodes = 64);

struct SliceCompositionReport {
  std::vector<double> nodes;   // contour parameters of the composition grid
  Eigen::MatrixXcd composed;   // composed kernel values on the grid
  double max_error = 0.0;      // vs spectral kernel over |s|,|s'| <= 3
  int slices = 1;
};

/// Composes req.slices copies of the first-order short-time Gaussian kernel
/// (free kernel times potential phase, the momentum integration already done)
/// through fixed contour quadrature. slices must be a power of two.
SliceCompositionReport compose_slices(const KernelRequest& req, int quadrature_nodes = 320);

struct SliceConvergence {
  std::vector<int> slice_counts;
  std::vector<double> errors;
  double fitted_order = 0.0;  // positive; 1 for the first-order factorization

  std::string to_json() const;
};

SliceConvergence slice_convergence(const KernelRequest& req, std::span<const int> slice_counts,
                                   int quadrature_nodes = 320);

/// sup |K| over the window, reported for growing dt; the artifact measures
/// long-time behavior of the product kernel without asserting a limit.
double kernel_sup_norm(const KernelRequest& req, double window = 3.0, double step = 0.25);

/// Time-ordered two-point function from the discretized quadratic generating
/// functional: tridiagonal (Gaussian-elimination) solve of the sourced action
/// on a time grid, with grid refinement and Richardson extrapolation.
/// Requires Im(omega) < 0; throws GridUnderresolved if refinement stalls.
Complex two_point_from_w(const SingleOscillatorParams& params, double t1, double t2);

}  // namespace ptpu
