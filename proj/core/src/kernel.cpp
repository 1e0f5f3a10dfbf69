#include "ptpu/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "ptpu/errors.hpp"

namespace ptpu {

void KernelRequest::validate() const {
  params.validate();
  if (dt < 0.0) throw std::invalid_argument("retarded kernel: dt must be non-negative");
  if (m_max < 1) throw std::invalid_argument("m_max must be at least 1");
  if (slices < 1) throw std::invalid_argument("slices must be at least 1");
}

namespace {

constexpr Complex kI{0.0, 1.0};

std::vector<Complex> spectral_phases(const Complex& omega, double dt, int m_max) {
  std::vector<Complex> phases(m_max + 1);
  for (int m = 0; m <= m_max; ++m) {
    phases[m] = std::exp(-kI * omega * (m + 0.5) * dt);
  }
  return phases;
}

Complex spectral_sum(const Complex& scale, const std::vector<double>& to,
                     const std::vector<double>& from, const std::vector<Complex>& phases) {
  std::vector<Complex> terms(phases.size());
  for (std::size_t m = 0; m < phases.size(); ++m) terms[m] = to[m] * phases[m] * from[m];
  return scale * pairwise_sum(terms);
}

}  // namespace

Complex spectral_kernel(const KernelRequest& req, double s_to, double s_from) {
  req.validate();
  Complex beta = contour_scale(req.params);
  double absb = std::abs(beta);
  std::vector<double> to = hermite_functions(req.m_max, absb * s_to);
  std::vector<double> from = hermite_functions(req.m_max, absb * s_from);
  return spectral_sum(beta, to, from, spectral_phases(req.params.omega, req.dt, req.m_max));
}

Complex anti_spectral_kernel(const KernelRequest& req, double s_to, double s_from) {
  req.validate();
  Complex beta = std::conj(contour_scale(req.params));
  double absb = std::abs(beta);
  std::vector<double> to = hermite_functions(req.m_max, absb * s_to);
  std::vector<double> from = hermite_functions(req.m_max, absb * s_from);
  return spectral_sum(beta, to, from,
                      spectral_phases(std::conj(req.params.omega), req.dt, req.m_max));
}

Complex pt_product_kernel(const KernelRequest& req, double s_to, double sc_to, double s_from,
                          double sc_from) {
  return spectral_kernel(req, s_to, s_from) * anti_spectral_kernel(req, sc_to, sc_from);
}

namespace {

// Sign of the principal sqrt(M/(2 pi i hbar t)) that makes the short-time
// kernel integrate to one along the contour; closed form of the Fresnel
// normalization product.
double free_prefactor_sign(const SingleOscillatorParams& p, double theta, double t) {
  Complex a = p.mass / (2.0 * M_PI * kI * p.hbar * t);
  Complex c = -kI * p.mass * std::polar(1.0, 2.0 * theta) / (2.0 * p.hbar * t);
  Complex product = std::sqrt(a) * std::polar(1.0, theta) * std::sqrt(M_PI / c);
  return product.real() > 0.0 ? 1.0 : -1.0;
}

// sqrt of g(t) = M Omega / (2 pi i hbar sin(Omega t)) tracked continuously
// from t -> 0+. Phase increments larger than ~pi are resolved toward the
// causal side (Omega - i0), which is the Maslov rule at caustics.
Complex tracked_prefactor(const SingleOscillatorParams& p, double theta, double dt) {
  int steps = std::max(8, static_cast<int>(std::ceil(std::abs(p.omega) * dt / 0.02)));
  double t0 = dt / steps;
  auto g = [&](double t) { return p.mass * p.omega / (2.0 * M_PI * kI * p.hbar * std::sin(p.omega * t)); };
  Complex g_prev = g(t0);
  double phase = std::arg(g_prev);
  if (free_prefactor_sign(p, theta, t0) < 0.0) phase += 2.0 * M_PI;
  for (int k = 2; k <= steps; ++k) {
    Complex g_cur = g(t0 * k);
    double delta = std::arg(g_cur / g_prev);
    if (delta > M_PI - 0.2) delta -= 2.0 * M_PI;
    phase += delta;
    g_prev = g_cur;
  }
  return std::sqrt(std::abs(g_prev)) * std::polar(1.0, phase / 2.0);
}

}  // namespace

Complex closed_form_kernel(const KernelRequest& req, double s_to, double s_from) {
  req.validate();
  const SingleOscillatorParams& p = req.params;
  Complex sn = std::sin(p.omega * req.dt);
  if (std::abs(sn) < 1e-8) throw CausticSingularity("sin(Omega dt) vanishes");
  Complex cs = std::cos(p.omega * req.dt);
  Contour contour = contour_for(p.mass, p.omega);
  Complex z_to = contour.point(s_to);
  Complex z_from = contour.point(s_from);
  Complex exponent =
      kI * p.mass * p.omega / (2.0 * p.hbar * sn) * ((z_to * z_to + z_from * z_from) * cs -
                                                     2.0 * z_to * z_from);
  return tracked_prefactor(p, contour.theta, req.dt) * std::exp(exponent);
}

Complex apply_spectral_kernel(const KernelRequest& req, const std::function<Complex(double)>& f,
                              double s_to, int nodes) {
  req.validate();
  Complex beta = contour_scale(req.params);
  double absb = std::abs(beta);
  Contour contour = contour_for(req.params.mass, req.params.omega);
  std::vector<Complex> phases = spectral_phases(req.params.omega, req.dt, req.m_max);
  std::vector<double> to = hermite_functions(req.m_max, absb * s_to);

  // <phi_m, f> for all m in one quadrature sweep
  const GaussHermiteRule& rule = gauss_hermite(nodes);
  double stretch = 1.0 / absb;
  std::vector<Complex> coeffs(req.m_max + 1, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    double s = rule.nodes[i] * stretch;
    Complex weight = rule.scaled_weights[i] * stretch * f(s) * contour.jacobian();
    std::vector<double> phi = hermite_functions(req.m_max, absb * s);
    for (int m = 0; m <= req.m_max; ++m) coeffs[m] += weight * phi[m];
  }
  std::vector<Complex> terms(req.m_max + 1);
  Complex sqrt_beta = std::sqrt(beta);
  for (int m = 0; m <= req.m_max; ++m) {
    terms[m] = sqrt_beta * to[m] * phases[m] * sqrt_beta * coeffs[m];
  }
  return pairwise_sum(terms);
}

Eigen::MatrixXcd spectral_kernel_matrix(const KernelRequest& req, std::span<const double> nodes) {
  req.validate();
  Complex beta = contour_scale(req.params);
  double absb = std::abs(beta);
  int n = static_cast<int>(nodes.size());
  Eigen::MatrixXd phi(req.m_max + 1, n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> col = hermite_functions(req.m_max, absb * nodes[j]);
    for (int m = 0; m <= req.m_max; ++m) phi(m, j) = col[m];
  }
  std::vector<Complex> phases = spectral_phases(req.params.omega, req.dt, req.m_max);
  Eigen::MatrixXcd weighted(req.m_max + 1, n);
  for (int j = 0; j < n; ++j) {
    for (int m = 0; m <= req.m_max; ++m) weighted(m, j) = phases[m] * phi(m, j);
  }
  return beta * (phi.transpose().cast<Complex>() * weighted);
}

namespace {

// Re of the quadratic coefficient A(dt) of the exact kernel exponent in rho;
// -Re A is the Gaussian decay rate per kernel argument.
double envelope_decay(const Complex& omega, double dt) {
  Complex w = std::exp(-kI * omega * dt);
  Complex a = -(1.0 + w * w) / (2.0 * (1.0 - w * w));
  return -a.real();
}

}  // namespace

Complex compose_closed_form(const SingleOscillatorParams& params, double dt1, double dt2,
                            double s_to, double s_from, int nodes) {
  Contour contour = contour_for(params.mass, params.omega);
  Complex beta = contour_scale(params);
  double absb = std::abs(beta);
  double alpha = (envelope_decay(params.omega, dt1) + envelope_decay(params.omega, dt2)) * absb *
                 absb;
  if (!(alpha > 0.05)) {
    throw QuadratureUnderresolved(
        "composed kernel envelope decays too weakly; needs Im(omega) < 0");
  }
  KernelRequest first{params, dt1};
  KernelRequest second{params, dt2};
  return integrate_gauss_hermite(
      [&](double u) {
        return closed_form_kernel(first, s_to, u) * closed_form_kernel(second, u, s_from) *
               contour.jacobian();
      },
      alpha, nodes);
}

SliceCompositionReport compose_slices(const KernelRequest& req, int quadrature_nodes) {
  req.validate();
  if (req.dt <= 0.0) throw std::invalid_argument("slice composition needs dt > 0");
  if ((req.slices & (req.slices - 1)) != 0) {
    throw std::invalid_argument("slices must be a power of two");
  }
  const SingleOscillatorParams& p = req.params;
  Contour contour = contour_for(p.mass, p.omega);
  Complex beta = contour_scale(p);
  double absb = std::abs(beta);
  double alpha = std::max(0.3, 2.0 * envelope_decay(p.omega, req.dt)) * absb * absb;

  const GaussHermiteRule& rule = gauss_hermite(quadrature_nodes);
  double stretch = 1.0 / std::sqrt(alpha);
  int n = quadrature_nodes;
  std::vector<double> nodes(n);
  Eigen::VectorXcd total_weights(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = rule.nodes[i] * stretch;
    total_weights(i) = rule.scaled_weights[i] * stretch * contour.jacobian();
  }

  // first-order short-time kernel: free Gaussian times potential phase
  double dtau = req.dt / req.slices;
  Complex pref = std::sqrt(p.mass / (2.0 * M_PI * kI * p.hbar * dtau));
  pref *= free_prefactor_sign(p, contour.theta, dtau);
  Complex kin = kI * p.mass * std::polar(1.0, 2.0 * contour.theta) / (2.0 * p.hbar * dtau);
  Eigen::MatrixXcd slice(n, n);
  for (int j = 0; j < n; ++j) {
    Complex z_from = contour.point(nodes[j]);
    Complex potential_phase =
        std::exp(-kI * (p.mass * p.omega * p.omega / 2.0) * z_from * z_from * dtau / p.hbar);
    for (int i = 0; i < n; ++i) {
      double ds = nodes[i] - nodes[j];
      slice(i, j) = pref * std::exp(kin * ds * ds) * potential_phase;
    }
  }

  Eigen::MatrixXcd composed = slice;
  for (int doublings = 0; (1 << doublings) < req.slices; ++doublings) {
    composed = composed * (total_weights.asDiagonal() * composed);
  }

  SliceCompositionReport report;
  report.slices = req.slices;
  report.nodes = nodes;
  report.max_error = 0.0;
  Eigen::MatrixXcd exact = spectral_kernel_matrix(req, nodes);
  for (int i = 0; i < n; ++i) {
    if (std::abs(nodes[i]) > 3.0) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(nodes[j]) > 3.0) continue;
      report.max_error = std::max(report.max_error, std::abs(composed(i, j) - exact(i, j)));
    }
  }
  report.composed = std::move(composed);
  return report;
}

SliceConvergence slice_convergence(const KernelRequest& req, std::span<const int> slice_counts,
                                   int quadrature_nodes) {
  SliceConvergence out;
  for (int count : slice_counts) {
    KernelRequest r = req;
    r.slices = count;
    SliceCompositionReport rep = compose_slices(r, quadrature_nodes);
    out.slice_counts.push_back(count);
    out.errors.push_back(rep.max_error);
  }
  double n = static_cast<double>(out.errors.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < out.errors.size(); ++i) {
    double x = std::log(static_cast<double>(out.slice_counts[i]));
    double y = std::log(out.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.fitted_order = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

std::string SliceConvergence::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (std::size_t i = 0; i < slice_counts.size(); ++i) {
    j["entries"].push_back({{"N", slice_counts[i]}, {"error", errors[i]}});
  }
  j["fitted_order"] = fitted_order;
  return j.dump();
}

double kernel_sup_norm(const KernelRequest& req, double window, double step) {
  double sup = 0.0;
  for (double s_to = -window; s_to <= window + 1e-12; s_to += step) {
    for (double s_from = -window; s_from <= window + 1e-12; s_from += step) {
      sup = std::max(sup, std::abs(spectral_kernel(req, s_to, s_from)));
    }
  }
  return sup;
}

namespace {

// Discrete Green's function of M(d^2/dt^2 + Omega^2) with the decaying-mode
// (outgoing) boundary rows, which are exact for the three-term recurrence, so
// the only error is the O(h^2) discretization of the second derivative.
Complex discrete_green(const SingleOscillatorParams& p, double tau, double h) {
  int span = static_cast<int>(std::llround(tau / h));
  int pad = 8;
  int n = span + 2 * pad + 1;
  int source = pad;
  int observe = pad + span;

  Complex w2 = p.omega * p.omega;
  Complex trace = 2.0 - h * h * w2;
  Complex disc = std::sqrt(trace * trace - 4.0);
  Complex z = (trace - disc) / 2.0;
  if (std::abs(z) > 1.0) z = (trace + disc) / 2.0;

  Complex inv_h2 = p.mass / (h * h);
  std::vector<Complex> sub(n, inv_h2), diag(n, p.mass * w2 - 2.0 * inv_h2), sup(n, inv_h2);
  std::vector<Complex> rhs(n, 0.0);
  rhs[source] = 1.0 / h;
  diag[0] = 1.0;
  sup[0] = -z;
  rhs[0] = 0.0;
  sub[n - 1] = -z;
  diag[n - 1] = 1.0;
  rhs[n - 1] = 0.0;

  // Thomas elimination
  std::vector<Complex> cp(n), dp(n);
  cp[0] = sup[0] / diag[0];
  dp[0] = rhs[0] / diag[0];
  for (int i = 1; i < n; ++i) {
    Complex denom = diag[i] - sub[i] * cp[i - 1];
    cp[i] = sup[i] / denom;
    dp[i] = (rhs[i] - sub[i] * dp[i - 1]) / denom;
  }
  std::vector<Complex> g(n);
  g[n - 1] = dp[n - 1];
  for (int i = n - 2; i >= 0; --i) g[i] = dp[i] - cp[i] * g[i + 1];
  return g[observe];
}

}  // namespace

Complex two_point_from_w(const SingleOscillatorParams& params, double t1, double t2) {
  params.validate();
  if (!(params.omega.imag() < 0.0)) {
    throw std::invalid_argument("two_point_from_w requires Im(omega) < 0 (causal selection)");
  }
  double tau = std::abs(t1 - t2);
  double h_target = 0.05 / std::abs(params.omega);
  double h0 = h_target;
  if (tau > 0.0) {
    int segments = std::max(1, static_cast<int>(std::ceil(tau / h_target)));
    h0 = tau / segments;  // grid hits both time arguments exactly
  }

  Complex previous_r{};
  bool have_previous = false;
  Complex v_coarse = discrete_green(params, tau, h0);
  for (int level = 0; level < 6; ++level) {
    double h_fine = h0 / std::pow(2.0, level + 1);
    Complex v_fine = discrete_green(params, tau, h_fine);
    Complex richardson = (4.0 * v_fine - v_coarse) / 3.0;
    if (have_previous && std::abs(richardson - previous_r) <= 1e-6) {
      return params.hbar / kI * richardson;
    }
    previous_r = richardson;
    have_previous = true;
    v_coarse = v_fine;
  }
  throw GridUnderresolved("time-grid refinement did not stabilize the two-point value");
}

}  // namespace ptpu
