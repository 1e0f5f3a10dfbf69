#include "ptpu/pu_transform.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ptpu/errors.hpp"

namespace ptpu {

void SingleOscillatorParams::validate() const {
  if (mass == 0.0 || omega == 0.0) throw std::invalid_argument("mass and omega must be nonzero");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
}

void TwoOscillatorParams::validate() const {
  if (mass1 == 0.0 || mass2 == 0.0) throw std::invalid_argument("masses must be nonzero");
  if (omega1 == 0.0 || omega2 == 0.0) throw std::invalid_argument("frequencies must be nonzero");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  double scale = std::max(std::norm(omega1), std::norm(omega2));
  if (std::abs(omega_sq_gap()) < kDegeneracyTol * scale) {
    throw DegenerateFrequencies("Omega1^2 and Omega2^2 are degenerate within tolerance");
  }
}

TransformPair build_transform(const TwoOscillatorParams& params) {
  params.validate();
  Complex w1 = params.omega1 * params.omega1;
  Complex w2 = params.omega2 * params.omega2;
  TransformPair pair;
  pair.forward << 1.0, 1.0, -w1, -w2;
  Complex inv_gap = 1.0 / (w1 - w2);
  pair.inverse << -w2 * inv_gap, -inv_gap, w1 * inv_gap, inv_gap;
  return pair;
}

DerivativePolynomial oscillator_lagrangian(const Complex& mass, const Complex& omega) {
  DerivativePolynomial p;
  p.add_term(JetIndex::monomial(1, 2), mass / 2.0);
  p.add_term(JetIndex::monomial(0, 2), -mass * omega * omega / 2.0);
  return p;
}

namespace {

// a*q_j + b*q_k
DerivativePolynomial linear_form(const Complex& a, int j, const Complex& b, int k) {
  DerivativePolynomial p;
  p.add_term(JetIndex::monomial(j), a);
  p.add_term(JetIndex::monomial(k), b);
  return p;
}

}  // namespace

DerivativePolynomial pu_lagrangian(const TwoOscillatorParams& params) {
  params.validate();
  Complex w1 = params.omega1 * params.omega1;
  Complex w2 = params.omega2 * params.omega2;
  Complex gap = w1 - w2;
  Complex pref = 1.0 / (2.0 * gap * gap);

  DerivativePolynomial u1 = linear_form(w2, 1, 1.0, 3);  // W2 Qdot + Qdddot
  DerivativePolynomial v1 = linear_form(w2, 0, 1.0, 2);  // W2 Q + Qddot
  DerivativePolynomial u2 = linear_form(w1, 1, 1.0, 3);
  DerivativePolynomial v2 = linear_form(w1, 0, 1.0, 2);

  DerivativePolynomial bracket1 = u1 * u1 - (w1 * (v1 * v1));
  DerivativePolynomial bracket2 = u2 * u2 - (w2 * (v2 * v2));
  return pref * (params.mass1 * bracket1 + params.mass2 * bracket2);
}

DerivativePolynomial pu_lagrangian_partial_integrated(const TwoOscillatorParams& params) {
  params.validate();
  Complex w1 = params.omega1 * params.omega1;
  Complex w2 = params.omega2 * params.omega2;
  Complex gap = w1 - w2;
  Complex pref = 1.0 / (2.0 * gap * gap);
  Complex mp = (params.mass1 + params.mass2) / 2.0;
  Complex mm = (params.mass1 - params.mass2) / 2.0;

  auto sq = [](int order) { return JetIndex::monomial(order, 2); };

  // symmetric-mass block
  DerivativePolynomial plus;
  plus.add_term(sq(2), -3.0 * (w1 + w2));
  plus.add_term(sq(0), -(w1 + w2) * w1 * w2);
  plus.add_term(sq(1), w1 * w1 + w2 * w2 + 4.0 * w1 * w2);
  plus.add_term(sq(3), 2.0);
  DerivativePolynomial plus_boundary;  // (W1+W2){Qdot,Qddot} - 2 W1 W2 {Q,Qdot}
  plus_boundary.add_term(JetIndex({0, 1, 1}), 2.0 * (w1 + w2));
  plus_boundary.add_term(JetIndex({1, 1}), -4.0 * w1 * w2);
  plus += total_time_derivative(plus_boundary);

  // antisymmetric-mass block
  DerivativePolynomial minus;
  minus.add_term(sq(2), 1.0);
  minus.add_term(sq(1), -(w1 + w2));
  minus.add_term(sq(0), w1 * w2);
  DerivativePolynomial minus_boundary;  // -{Qdot,Qddot}
  minus_boundary.add_term(JetIndex({0, 1, 1}), -2.0);
  minus += total_time_derivative(minus_boundary);

  return pref * (mp * plus + (mm * gap) * minus);
}

BenderMannheimForm bender_mannheim(const TwoOscillatorParams& params, double tol) {
  params.validate();
  double scale = std::max(std::abs(params.mass1), std::abs(params.mass2));
  if (std::abs(params.mass1 + params.mass2) > tol * scale) {
    throw NotBenderMannheimCase("requires M1 = -M2");
  }
  Complex w1 = params.omega1 * params.omega1;
  Complex w2 = params.omega2 * params.omega2;
  BenderMannheimForm out;
  out.gamma = params.mass1 / (w1 - w2);
  out.lagrangian.add_term(JetIndex::monomial(2, 2), out.gamma / 2.0);
  out.lagrangian.add_term(JetIndex::monomial(1, 2), -out.gamma / 2.0 * (w1 + w2));
  out.lagrangian.add_term(JetIndex::monomial(0, 2), out.gamma / 2.0 * w1 * w2);
  return out;
}

ElFactorization pu_el_factorization(const TwoOscillatorParams& params) {
  DerivativePolynomial el = euler_lagrange(pu_lagrangian(params));

  // Linear in jets by construction; collect c_k of q_k and map q_{2k} -> x^k.
  std::vector<Complex> dividend;
  for (const auto& [index, c] : el.terms()) {
    if (index.degree() != 1) {
      throw std::logic_error("Euler-Lagrange expression of a quadratic Lagrangian must be linear");
    }
    int k = index.order();
    if (k % 2 != 0) {
      // Odd derivatives cancel exactly for these Lagrangians.
      if (std::abs(c) > 1e-12 * el.max_abs_coefficient()) {
        throw std::logic_error("unexpected odd-order derivative in the equation of motion");
      }
      continue;
    }
    std::size_t deg = static_cast<std::size_t>(k / 2);
    if (dividend.size() <= deg) dividend.resize(deg + 1, 0.0);
    dividend[deg] = c;
  }
  while (dividend.size() > 1 && dividend.back() == 0.0) dividend.pop_back();

  Complex w1 = params.omega1 * params.omega1;
  Complex w2 = params.omega2 * params.omega2;
  // (x + W1)(x + W2) = x^2 + (W1+W2) x + W1 W2
  std::array<Complex, 3> divisor{w1 * w2, w1 + w2, 1.0};

  ElFactorization out;
  out.leading_magnitude = dividend.empty() ? 0.0 : std::abs(dividend.back());
  std::vector<Complex> rem = dividend;
  if (rem.size() > 2) {
    out.quotient.assign(rem.size() - 2, 0.0);
    for (std::size_t deg = rem.size() - 1; deg >= 2; --deg) {
      Complex q = rem[deg] / divisor[2];
      out.quotient[deg - 2] = q;
      for (std::size_t j = 0; j < 3; ++j) rem[deg - 2 + j] -= q * divisor[j];
    }
    rem.resize(2);
  }
  out.remainder = rem;
  out.remainder_magnitude = 0.0;
  for (const Complex& c : out.remainder) {
    out.remainder_magnitude = std::max(out.remainder_magnitude, std::abs(c));
  }
  return out;
}

namespace {

template <int N>
using State = std::array<Complex, N>;

// classic fixed-step RK4 on a complexified first-order system
template <int N, typename F>
State<N> rk4_step(const F& f, double t, const State<N>& y, double dt) {
  auto axpy = [](const State<N>& a, const State<N>& b, double s) {
    State<N> r;
    for (int i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  State<N> k1 = f(t, y);
  State<N> k2 = f(t + dt / 2, axpy(y, k1, dt / 2));
  State<N> k3 = f(t + dt / 2, axpy(y, k2, dt / 2));
  State<N> k4 = f(t + dt, axpy(y, k3, dt));
  State<N> out;
  for (int i = 0; i < N; ++i) {
    out[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace

TrajectoryReport integrate_classical(const TwoOscillatorParams& params,
                                     const ClassicalState& initial, double t_end, double dt) {
  params.validate();
  if (!(dt > 0.0) || !(t_end > 0.0)) throw std::invalid_argument("dt and t_end must be positive");
  double omega_scale = std::max(std::abs(params.omega1), std::abs(params.omega2));
  if (dt * omega_scale > 0.1) {
    throw StepSizeRejected("dt * max(|Omega1|,|Omega2|) exceeds 0.1");
  }

  Complex w1 = params.omega1 * params.omega1;
  Complex w2 = params.omega2 * params.omega2;

  auto pu_rhs = [&](double, const State<4>& y) {
    return State<4>{y[1], y[2], y[3], -(w1 + w2) * y[2] - w1 * w2 * y[0]};
  };
  auto osc_rhs = [&](double, const State<4>& y) {
    return State<4>{y[1], -w1 * y[0], y[3], -w2 * y[2]};
  };

  TransformPair map = build_transform(params);
  State<4> pu{initial.jets[0], initial.jets[1], initial.jets[2], initial.jets[3]};
  Eigen::Vector2cd pos = map.inverse * Eigen::Vector2cd(pu[0], pu[2]);
  Eigen::Vector2cd vel = map.inverse * Eigen::Vector2cd(pu[1], pu[3]);
  State<4> osc{pos(0), vel(0), pos(1), vel(1)};

  int steps = static_cast<int>(std::llround(t_end / dt));
  TrajectoryReport report;
  report.samples.reserve(steps + 1);

  auto record = [&](double t) {
    TrajectorySample s;
    s.t = t;
    s.q = pu[0];
    s.qdot = pu[1];
    s.qddot = pu[2];
    s.qdddot = pu[3];
    s.q1 = osc[0];
    s.q1dot = osc[1];
    s.q2 = osc[2];
    s.q2dot = osc[3];
    s.dev_q = std::abs(pu[0] - (osc[0] + osc[2]));
    s.dev_qddot = std::abs(pu[2] + w1 * osc[0] + w2 * osc[2]);
    report.samples.push_back(s);
    report.max_dev_q = std::max(report.max_dev_q, s.dev_q);
    report.max_dev_qdot = std::max(report.max_dev_qdot, std::abs(pu[1] - (osc[1] + osc[3])));
    report.max_dev_qddot = std::max(report.max_dev_qddot, s.dev_qddot);
    report.max_dev_qdddot =
        std::max(report.max_dev_qdddot, std::abs(pu[3] + w1 * osc[1] + w2 * osc[3]));
  };

  record(initial.time);
  for (int i = 1; i <= steps; ++i) {
    pu = rk4_step<4>(pu_rhs, initial.time + (i - 1) * dt, pu, dt);
    osc = rk4_step<4>(osc_rhs, initial.time + (i - 1) * dt, osc, dt);
    record(initial.time + i * dt);
  }
  return report;
}

std::string TrajectoryReport::to_csv() const {
  std::string out = "t,Re(Q),Im(Q),Re(Q1),Im(Q1),Re(Q2),Im(Q2),dev_Q,dev_Qddot\n";
  char line[320];
  for (const TrajectorySample& s : samples) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  s.t, s.q.real(), s.q.imag(), s.q1.real(), s.q1.imag(), s.q2.real(), s.q2.imag(),
                  s.dev_q, s.dev_qddot);
    out += line;
  }
  return out;
}

Complex exact_fourth_order_solution(const TwoOscillatorParams& params,
                                    const ClassicalState& initial, double t) {
  TransformPair map = build_transform(params);
  Eigen::Vector2cd pos = map.inverse * Eigen::Vector2cd(initial.jets[0], initial.jets[2]);
  Eigen::Vector2cd vel = map.inverse * Eigen::Vector2cd(initial.jets[1], initial.jets[3]);
  double tau = t - initial.time;
  Complex q1 = pos(0) * std::cos(params.omega1 * tau) +
               vel(0) * std::sin(params.omega1 * tau) / params.omega1;
  Complex q2 = pos(1) * std::cos(params.omega2 * tau) +
               vel(1) * std::sin(params.omega2 * tau) / params.omega2;
  return q1 + q2;
}

double trajectory_convergence_slope(const TwoOscillatorParams& params,
                                    const ClassicalState& initial, double t_end,
                                    std::span<const double> dts) {
  if (dts.size() < 2) throw std::invalid_argument("need at least two step sizes");
  std::vector<double> lx, ly;
  for (double dt : dts) {
    TrajectoryReport r = integrate_classical(params, initial, t_end, dt);
    double err = 0.0;
    for (const TrajectorySample& s : r.samples) {
      err = std::max(err, std::abs(s.q - exact_fourth_order_solution(params, initial, s.t)));
    }
    if (err <= 0.0) throw std::invalid_argument("zero integration error, slope undefined");
    lx.push_back(std::log(dt));
    ly.push_back(std::log(err));
  }
  double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace ptpu
