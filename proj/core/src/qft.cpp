#include "ptpu/qft.hpp"

#include <cmath>
#include <stdexcept>

#include "ptpu/errors.hpp"

namespace ptpu {

namespace {

constexpr Complex kI{0.0, 1.0};

GammaBasis build_basis() {
  GammaBasis basis;
  for (Matrix4& g : basis.gamma) g.setZero();

  Matrix4& g0 = basis.gamma[0];
  g0(0, 0) = 1.0;
  g0(1, 1) = 1.0;
  g0(2, 2) = -1.0;
  g0(3, 3) = -1.0;

  // spatial gammas: [[0, sigma_k], [-sigma_k, 0]]
  Matrix4& g1 = basis.gamma[1];
  g1(0, 3) = 1.0;
  g1(1, 2) = 1.0;
  g1(2, 1) = -1.0;
  g1(3, 0) = -1.0;

  Matrix4& g2 = basis.gamma[2];
  g2(0, 3) = -kI;
  g2(1, 2) = kI;
  g2(2, 1) = kI;
  g2(3, 0) = -kI;

  Matrix4& g3 = basis.gamma[3];
  g3(0, 2) = 1.0;
  g3(1, 3) = -1.0;
  g3(2, 0) = -1.0;
  g3(3, 1) = 1.0;

  basis.charge_conjugation = kI * g2 * g0;
  return basis;
}

}  // namespace

const GammaBasis& GammaBasis::instance() {
  static const GammaBasis basis = build_basis();
  return basis;
}

Matrix4 feynman_slash(const FourMomentum& p) {
  const GammaBasis& basis = GammaBasis::instance();
  return p.p0 * basis.gamma[0] - p.p1 * basis.gamma[1] - p.p2 * basis.gamma[2] -
         p.p3 * basis.gamma[3];
}

bool causal_mass_convention(const ScalarChannel& ch) { return ch.m.imag() <= 0.0; }

namespace {

void check_off_shell(const Complex& p_sq, const Complex& m) {
  double scale = std::max(1.0, std::norm(m));
  if (std::abs(p_sq - m * m) < 1e-12 * scale) {
    throw OnShellPole("propagator evaluated at p^2 = M^2");
  }
}

}  // namespace

Complex scalar_propagator(const Complex& p_sq, const ScalarChannel& ch, bool anti_causal) {
  if (ch.z == 0.0) throw std::invalid_argument("field renormalization must be nonzero");
  Complex z = anti_causal ? std::conj(ch.z) : ch.z;
  Complex m = anti_causal ? std::conj(ch.m) : ch.m;
  check_off_shell(p_sq, m);
  return 1.0 / (z * (p_sq - m * m));
}

Matrix4 dirac_propagator(const FourMomentum& p, const Complex& mass) {
  check_off_shell(p.squared(), mass);
  Matrix4 numerator = feynman_slash(p) + mass * Matrix4::Identity();
  return numerator / (p.squared() - mass * mass);
}

Complex AmplitudeKernel::single_fraction_at(const Complex& p_sq) const {
  Complex num = 0.0;
  Complex power = 1.0;
  for (const Complex& c : numerator) {
    num += c * power;
    power *= p_sq;
  }
  Complex den = 1.0;
  for (const Complex& root : denominator_roots) den *= p_sq - root;
  return num / den;
}

AmplitudeKernel combined_amplitude_kernel(std::span<const ScalarChannel> channels,
                                          const Complex& p_sq) {
  if (channels.empty()) throw std::invalid_argument("need at least one channel");
  for (std::size_t i = 0; i < channels.size(); ++i) {
    for (std::size_t j = i + 1; j < channels.size(); ++j) {
      Complex gap = channels[i].m_squared() - channels[j].m_squared();
      double scale = std::max({1.0, std::abs(channels[i].m_squared()),
                               std::abs(channels[j].m_squared())});
      if (std::abs(gap) < 1e-12 * scale) {
        throw DegenerateMasses("single-fraction form needs distinct channel masses");
      }
    }
  }

  AmplitudeKernel kernel;
  kernel.sum = 0.0;
  for (const ScalarChannel& ch : channels) {
    kernel.sum += ch.weight() * scalar_propagator(p_sq, {1.0, ch.m, 1.0});
    kernel.denominator_roots.push_back(ch.m_squared());
  }

  // numerator = sum_i w_i prod_{j != i} (p^2 - M_j^2), expanded in p^2
  kernel.numerator.assign(channels.size(), 0.0);
  for (std::size_t i = 0; i < channels.size(); ++i) {
    std::vector<Complex> partial{1.0};
    for (std::size_t j = 0; j < channels.size(); ++j) {
      if (j == i) continue;
      std::vector<Complex> next(partial.size() + 1, 0.0);
      for (std::size_t k = 0; k < partial.size(); ++k) {
        next[k + 1] += partial[k];
        next[k] -= partial[k] * channels[j].m_squared();
      }
      partial = std::move(next);
    }
    for (std::size_t k = 0; k < partial.size(); ++k) {
      kernel.numerator[k] += channels[i].weight() * partial[k];
    }
  }
  return kernel;
}

Complex pauli_villars_solve(const ScalarChannel& ch1, const Complex& z2, const Complex& m2) {
  (void)m2;  // the leading constraint involves only the weights
  if (z2 == 0.0) throw std::invalid_argument("field renormalization must be nonzero");
  return -ch1.g * ch1.g * z2 / ch1.z;
}

double falloff_exponent(std::span<const ScalarChannel> channels,
                        std::span<const Complex> p_sq_grid) {
  if (p_sq_grid.size() < 3) throw std::invalid_argument("need at least three grid points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = static_cast<double>(p_sq_grid.size());
  for (const Complex& p_sq : p_sq_grid) {
    AmplitudeKernel k = combined_amplitude_kernel(channels, p_sq);
    double x = std::log(std::abs(p_sq));
    double y = std::log(std::abs(k.sum));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<Complex> geometric_psq_grid(std::span<const ScalarChannel> channels, int points,
                                        double decades) {
  double m_scale = 1.0;
  for (const ScalarChannel& ch : channels) {
    m_scale = std::max(m_scale, std::abs(ch.m_squared()));
  }
  std::vector<Complex> grid;
  double start = 10.0 * m_scale;
  for (int i = 0; i < points; ++i) {
    double exponent = decades * i / (points - 1);
    grid.push_back(start * std::pow(10.0, exponent));
  }
  return grid;
}

DoubleConstraintReport double_constraint_check(const ScalarChannel& ch1,
                                               const ScalarChannel& ch2) {
  DoubleConstraintReport report;
  report.constraint1 = ch1.weight() + ch2.weight();
  report.constraint2 = ch2.m_squared() * ch1.weight() + ch1.m_squared() * ch2.weight();
  report.vanishes =
      std::abs(report.constraint1) < 1e-12 && std::abs(report.constraint2) < 1e-12;

  report.amplitude_sup_norm = 0.0;
  for (int i = 0; i < 25; ++i) {
    // fixed off-shell test grid, real p^2 spread through the mass scale
    double p_sq = -20.0 + 41.0 * i / 24.0 + 0.137;
    Complex value = ch1.weight() * scalar_propagator(p_sq, {1.0, ch1.m, 1.0}) +
                    ch2.weight() * scalar_propagator(p_sq, {1.0, ch2.m, 1.0});
    report.amplitude_sup_norm = std::max(report.amplitude_sup_norm, std::abs(value));
  }
  return report;
}

double rescaling_equivalence(const ScalarChannel& ch, const Complex& p_sq) {
  Complex with_z = ch.weight() * scalar_propagator(p_sq, {1.0, ch.m, 1.0});
  Complex rescaled_coupling = ch.g / std::sqrt(ch.z);
  Complex without_z =
      rescaled_coupling * rescaled_coupling * scalar_propagator(p_sq, {1.0, ch.m, 1.0});
  return std::abs(with_z - without_z);
}

}  // namespace ptpu
