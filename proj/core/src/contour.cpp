#include "ptpu/contour.hpp"

#include <cmath>
#include <stdexcept>

#include "ptpu/errors.hpp"

namespace ptpu {

Contour contour_for(const Complex& mass, const Complex& omega) {
  Complex scale = mass * omega;
  if (scale == 0.0) throw ZeroScale("M * Omega must be nonzero");
  return Contour{-std::arg(scale) / 2.0};
}

Complex contour_scale(const SingleOscillatorParams& params) {
  params.validate();
  return std::sqrt(params.mass * params.omega / params.hbar);
}

Complex eval_eigenfunction(const EigenfunctionSpec& spec, double s) {
  Complex beta = contour_scale(spec.params);
  double rho = std::abs(beta) * s;
  double phi = hermite_function(spec.index, rho);
  // conjugate composition for the left side; phi is real on-contour
  return std::sqrt(beta) * phi;
}

namespace {

Complex biortho_value(const SingleOscillatorParams& params, int m, int m_prime, int nodes) {
  Contour contour = contour_for(params.mass, params.omega);
  Complex beta = contour_scale(params);
  double absb = std::abs(beta);
  double alpha = absb * absb;  // Gaussian decay rate of phi*phi in s
  EigenfunctionSpec left{params, m, Side::left};
  EigenfunctionSpec right{params, m_prime, Side::right};
  return integrate_gauss_hermite(
      [&](double s) {
        return eval_eigenfunction(left, s) * eval_eigenfunction(right, s) * contour.jacobian();
      },
      alpha, nodes);
}

}  // namespace

Complex biortho_inner(const SingleOscillatorParams& params, int m, int m_prime, int nodes) {
  if (nodes < 32) throw std::invalid_argument("biortho_inner needs at least 32 nodes");
  if (m < 0 || m_prime < 0) throw std::invalid_argument("indices must be non-negative");
  Complex coarse = biortho_value(params, m, m_prime, nodes);
  Complex fine = biortho_value(params, m, m_prime, 2 * nodes);
  if (std::abs(fine - coarse) > 1e-8) {
    throw QuadratureUnderresolved("bi-orthonormality integral not converged");
  }
  return fine;
}

namespace {

// One Gaussian factor integral of exp(-scale * zeta^2 / hbar) along a ray.
Complex gaussian_factor(const Complex& scale, const Contour& contour, double hbar, int nodes) {
  double alpha = std::abs(scale) / hbar;
  return integrate_gauss_hermite(
      [&](double s) {
        Complex zeta = contour.point(s);
        return std::exp(-scale * zeta * zeta / hbar) * contour.jacobian();
      },
      alpha, nodes);
}

double ground_prefactor(const TwoOscillatorParams& params) {
  double l1 = std::abs(params.hbar / (params.mass1 * params.omega1));
  double l2 = std::abs(params.hbar / (params.mass2 * params.omega2));
  return 1.0 / (M_PI * std::sqrt(l1 * l2));
}

// The conjugate-variable contours are the complex conjugates of the zeta
// contours (theta -> -theta). Recomputing them from conjugated parameters
// would break at arg(M Omega) = pi, where the principal value does not flip.
Complex ground_norm_value(const TwoOscillatorParams& params, int nodes) {
  Contour c1 = contour_for(params.mass1, params.omega1);
  Contour c2 = contour_for(params.mass2, params.omega2);
  Complex s1 = params.mass1 * params.omega1;
  Complex s2 = params.mass2 * params.omega2;
  Complex product = gaussian_factor(s1, c1, params.hbar, nodes) *
                    gaussian_factor(s2, c2, params.hbar, nodes) *
                    gaussian_factor(std::conj(s1), Contour{-c1.theta}, params.hbar, nodes) *
                    gaussian_factor(std::conj(s2), Contour{-c2.theta}, params.hbar, nodes);
  double pref = ground_prefactor(params);
  return pref * pref * product;
}

}  // namespace

Complex ground_state_norm(const TwoOscillatorParams& params, int nodes) {
  params.validate();
  if (nodes < 32) throw std::invalid_argument("ground_state_norm needs at least 32 nodes");
  Complex coarse = ground_norm_value(params, nodes);
  Complex fine = ground_norm_value(params, 2 * nodes);
  if (std::abs(fine - coarse) > 1e-8) {
    throw QuadratureUnderresolved("ground-state norm integral not converged");
  }
  return fine;
}

Complex ground_state_norm_full4d(const TwoOscillatorParams& params, int nodes_per_axis) {
  params.validate();
  struct Axis {
    Contour contour;
    Complex scale;  // M Omega
    std::vector<double> s;
    std::vector<double> tw;
  };
  Contour c1 = contour_for(params.mass1, params.omega1);
  Contour c2 = contour_for(params.mass2, params.omega2);
  std::array<std::pair<Complex, Contour>, 4> mw{
      std::pair{params.mass1 * params.omega1, c1}, std::pair{params.mass2 * params.omega2, c2},
      std::pair{std::conj(params.mass1 * params.omega1), Contour{-c1.theta}},
      std::pair{std::conj(params.mass2 * params.omega2), Contour{-c2.theta}}};
  std::array<Axis, 4> axes;
  const GaussHermiteRule& rule = gauss_hermite(nodes_per_axis);
  for (int k = 0; k < 4; ++k) {
    axes[k].contour = mw[k].second;
    axes[k].scale = mw[k].first;
    double alpha = std::abs(axes[k].scale) / params.hbar;
    double stretch = 1.0 / std::sqrt(alpha);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      axes[k].s.push_back(rule.nodes[i] * stretch);
      axes[k].tw.push_back(rule.scaled_weights[i] * stretch);
    }
  }
  Complex total = 0.0;
  Complex jac = axes[0].contour.jacobian() * axes[1].contour.jacobian() *
                axes[2].contour.jacobian() * axes[3].contour.jacobian();
  for (int i0 = 0; i0 < nodes_per_axis; ++i0) {
    for (int i1 = 0; i1 < nodes_per_axis; ++i1) {
      for (int i2 = 0; i2 < nodes_per_axis; ++i2) {
        for (int i3 = 0; i3 < nodes_per_axis; ++i3) {
          Complex z0 = axes[0].contour.point(axes[0].s[i0]);
          Complex z1 = axes[1].contour.point(axes[1].s[i1]);
          Complex z2 = axes[2].contour.point(axes[2].s[i2]);
          Complex z3 = axes[3].contour.point(axes[3].s[i3]);
          Complex exponent = -(axes[0].scale * z0 * z0 + axes[1].scale * z1 * z1 +
                               axes[2].scale * z2 * z2 + axes[3].scale * z3 * z3) /
                             params.hbar;
          total += axes[0].tw[i0] * axes[1].tw[i1] * axes[2].tw[i2] * axes[3].tw[i3] *
                   std::exp(exponent);
        }
      }
    }
  }
  double pref = ground_prefactor(params);
  return pref * pref * jac * total;
}

Complex momentum_eigenfunction(const SingleOscillatorParams& params, int m, double sp) {
  Complex beta = contour_scale(params);
  double kappa = sp / (params.hbar * std::abs(beta));
  return std::sqrt(2.0 * M_PI / beta) * hermite_function(m, kappa);
}

namespace {

double fourier_deviation(const SingleOscillatorParams& params, int m, int nodes) {
  Contour contour = contour_for(params.mass, params.omega);
  Complex beta = contour_scale(params);
  double absb = std::abs(beta);
  double alpha = absb * absb / 2.0;  // single Hermite-function decay
  Complex momentum_phase = std::polar(1.0, -contour.theta);
  Complex eigenvalue = std::pow(Complex(0.0, -1.0), m);
  EigenfunctionSpec right{params, m, Side::right};

  double dev = 0.0;
  for (int i = 0; i <= 80; ++i) {
    double sp = -4.0 + 0.1 * i;
    Complex p = momentum_phase * sp;
    Complex transformed = integrate_gauss_hermite(
        [&](double s) {
          Complex zeta = contour.point(s);
          return eval_eigenfunction(right, s) *
                 std::exp(Complex(0.0, -1.0) * p * zeta / params.hbar) * contour.jacobian();
        },
        alpha, nodes);
    Complex expected = eigenvalue * momentum_eigenfunction(params, m, sp);
    dev = std::max(dev, std::abs(transformed - expected));
  }
  return dev;
}

}  // namespace

double fourier_pair_check(const SingleOscillatorParams& params, int m, int nodes) {
  if (m < 0 || m > 4) throw std::invalid_argument("fourier_pair_check requires 0 <= m <= 4");
  double coarse = fourier_deviation(params, m, nodes);
  double fine = fourier_deviation(params, m, 2 * nodes);
  if (std::abs(fine - coarse) > 1e-8) {
    throw QuadratureUnderresolved("Fourier transform quadrature not converged");
  }
  return fine;
}

}  // namespace ptpu
