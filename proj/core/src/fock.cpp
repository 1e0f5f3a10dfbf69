#include "ptpu/fock.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "json.hpp"

namespace ptpu {

namespace {

int space_dimension(const std::vector<int>& cutoffs) {
  int dim = 1;
  for (int c : cutoffs) {
    if (c < 1) throw std::invalid_argument("per-mode cutoff must be at least 1");
    dim *= c + 1;
  }
  return dim;
}

}  // namespace

int FockOperator::flat_index(std::span<const int> occupation) const {
  int idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    idx = idx * (dims[k] + 1) + occupation[k];
  }
  return idx;
}

std::vector<int> FockOperator::occupation(int flat) const {
  std::vector<int> occ(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    occ[k] = flat % (dims[k] + 1);
    flat /= dims[k] + 1;
  }
  return occ;
}

FockOperator fock_identity(const std::vector<int>& cutoffs) {
  int dim = space_dimension(cutoffs);
  return {Eigen::MatrixXcd::Identity(dim, dim), cutoffs};
}

FockOperator mode_lowering(const std::vector<int>& cutoffs, int mode) {
  FockOperator op = fock_identity(cutoffs);
  op.matrix.setZero();
  int dim = op.dimension();
  for (int col = 0; col < dim; ++col) {
    std::vector<int> occ = op.occupation(col);
    if (occ[mode] == 0) continue;
    double amp = std::sqrt(static_cast<double>(occ[mode]));
    occ[mode] -= 1;
    op.matrix(op.flat_index(occ), col) = amp;
  }
  return op;
}

FockOperator mode_raising(const std::vector<int>& cutoffs, int mode) {
  FockOperator op = fock_identity(cutoffs);
  op.matrix.setZero();
  int dim = op.dimension();
  for (int col = 0; col < dim; ++col) {
    std::vector<int> occ = op.occupation(col);
    if (occ[mode] == cutoffs[mode]) continue;
    occ[mode] += 1;
    double amp = std::sqrt(static_cast<double>(occ[mode]));
    op.matrix(op.flat_index(occ), col) = amp;
  }
  return op;
}

namespace {

// single-mode sqrt(k) matrices on levels 0..cutoff
Eigen::MatrixXcd local_lowering(int cutoff) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int k = 1; k <= cutoff; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return m;
}

Eigen::MatrixXcd local_raising(int cutoff) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int k = 0; k < cutoff; ++k) m(k + 1, k) = std::sqrt(k + 1.0);
  return m;
}

// lifts an operator on one mode to the tensor-product space
FockOperator embed_mode_operator(const std::vector<int>& cutoffs, int mode,
                                 const Eigen::MatrixXcd& local) {
  FockOperator op = fock_identity(cutoffs);
  op.matrix.setZero();
  int dim = op.dimension();
  for (int col = 0; col < dim; ++col) {
    std::vector<int> occ = op.occupation(col);
    int k = occ[mode];
    for (int kp = 0; kp <= cutoffs[mode]; ++kp) {
      if (local(kp, k) == 0.0) continue;
      occ[mode] = kp;
      op.matrix(op.flat_index(occ), col) = local(kp, k);
    }
  }
  return op;
}

}  // namespace

LadderSet build_ladders(int n_max, const Complex& n_const) {
  if (n_max < 2) throw std::invalid_argument("n_max must be at least 2");
  if (n_const == 0.0) throw std::invalid_argument("ladder normalization must be nonzero");
  std::vector<int> cutoffs{n_max, n_max};
  LadderSet set;
  set.n_const = n_const;
  set.a = mode_lowering(cutoffs, 0);
  set.a.matrix /= n_const;
  set.c_plus = mode_raising(cutoffs, 0);
  set.c_plus.matrix *= n_const;
  Complex nc = std::conj(n_const);
  set.c = mode_lowering(cutoffs, 1);
  set.c.matrix *= nc;
  set.a_plus = mode_raising(cutoffs, 1);
  set.a_plus.matrix /= nc;
  return set;
}

Complex holomorphic_energy(const TwoOscillatorParams& params, int m1, int m2) {
  return params.hbar * params.omega1 * (m1 + 0.5) + params.hbar * params.omega2 * (m2 + 0.5);
}

Complex pt_energy(const TwoOscillatorParams& params, const SpectrumLabel& label) {
  // holomorphic and anti-holomorphic parts are combined last so that
  // conj(pt_energy(m;n)) == pt_energy(n;m) holds bit-exactly
  Complex hol = holomorphic_energy(params, label.m1, label.m2);
  Complex anti = params.hbar * std::conj(params.omega1) * (label.n1 + 0.5) +
                 params.hbar * std::conj(params.omega2) * (label.n2 + 0.5);
  return hol + anti;
}

HamiltonianSet build_hamiltonians(const TwoOscillatorParams& params, int n_max) {
  params.validate();
  std::vector<int> cutoffs{n_max, n_max, n_max, n_max};
  auto weighted_pair = [&](int mode, const Complex& scale) -> Eigen::MatrixXcd {
    // (scale/2)(raise*lower + lower*raise), formed on the single-mode factor
    // and lifted to the product space
    Eigen::MatrixXcd lower = local_lowering(n_max);
    Eigen::MatrixXcd raise = local_raising(n_max);
    Eigen::MatrixXcd pair = (scale * 0.5) * (raise * lower + lower * raise);
    return embed_mode_operator(cutoffs, mode, pair).matrix;
  };
  Complex hw1 = params.hbar * params.omega1;
  Complex hw2 = params.hbar * params.omega2;
  HamiltonianSet set;
  set.h_h = {weighted_pair(0, hw1) + weighted_pair(1, hw2), cutoffs};
  set.h_a = {weighted_pair(2, std::conj(hw1)) + weighted_pair(3, std::conj(hw2)), cutoffs};
  set.h = {set.h_h.matrix + set.h_a.matrix, cutoffs};
  return set;
}

namespace {

bool is_diagonal(const Eigen::MatrixXcd& m) {
  double scale = m.cwiseAbs().maxCoeff();
  if (scale == 0.0) return true;
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < m.rows(); ++i) {
      if (i != j && std::abs(m(i, j)) > 1e-14 * scale) return false;
    }
  }
  return true;
}

Eigen::MatrixXcd matrix_exponential(const Eigen::MatrixXcd& m) {
  if (is_diagonal(m)) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i) out(i, i) = std::exp(m(i, i));
    return out;
  }
  return m.exp();
}

}  // namespace

FockOperator heisenberg_evolve(const FockOperator& h, const FockOperator& op, double t,
                               double hbar) {
  Complex factor = Complex(0.0, 1.0) * t / hbar;  // -t/(i hbar) = +i t / hbar
  Eigen::MatrixXcd forward = matrix_exponential(factor * h.matrix);
  Eigen::MatrixXcd backward = matrix_exponential(-factor * h.matrix);
  return {forward * op.matrix * backward, op.dims};
}

FockOperator single_pt_hamiltonian(const SingleOscillatorParams& params, int n_max) {
  params.validate();
  std::vector<int> cutoffs{n_max, n_max};
  auto weighted_pair = [&](int mode, const Complex& scale) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd lower = local_lowering(n_max);
    Eigen::MatrixXcd raise = local_raising(n_max);
    Eigen::MatrixXcd pair = (scale * 0.5) * (raise * lower + lower * raise);
    return embed_mode_operator(cutoffs, mode, pair).matrix;
  };
  Complex hw = params.hbar * params.omega;
  return {weighted_pair(0, hw) + weighted_pair(1, std::conj(hw)), cutoffs};
}

FockOperator position_operator(const SingleOscillatorParams& params, int n_max,
                               const Complex& n_const) {
  params.validate();
  std::vector<int> cutoffs{n_max, n_max};
  Complex amp = std::sqrt(params.hbar / (2.0 * params.mass * params.omega));
  Eigen::MatrixXcd a = mode_lowering(cutoffs, 0).matrix;
  Eigen::MatrixXcd cp = mode_raising(cutoffs, 0).matrix;
  return {amp * (n_const * a + cp / n_const), cutoffs};
}

FockOperator momentum_operator(const SingleOscillatorParams& params, int n_max,
                               const Complex& n_const) {
  params.validate();
  std::vector<int> cutoffs{n_max, n_max};
  Complex amp = Complex(0.0, -1.0) * std::sqrt(params.hbar * params.omega * params.mass / 2.0);
  Eigen::MatrixXcd a = mode_lowering(cutoffs, 0).matrix;
  Eigen::MatrixXcd cp = mode_raising(cutoffs, 0).matrix;
  return {amp * (n_const * a - cp / n_const), cutoffs};
}

Complex t_ordered_two_point(const SingleOscillatorParams& params, double t1, double t2,
                            int n_max, const Complex& n_const) {
  FockOperator h = single_pt_hamiltonian(params, n_max);
  FockOperator q0 = position_operator(params, n_max, n_const);
  double t_late = std::max(t1, t2);
  double t_early = std::min(t1, t2);
  FockOperator q_late = heisenberg_evolve(h, q0, t_late, params.hbar);
  FockOperator q_early = heisenberg_evolve(h, q0, t_early, params.hbar);
  Eigen::MatrixXcd product = q_late.matrix * q_early.matrix;
  return product(0, 0);  // <<0| ... |0>> with both vacua the e0 basis vector
}

std::string spectrum_json(const TwoOscillatorParams& params, int label_max) {
  params.validate();
  nlohmann::json arr = nlohmann::json::array();
  for (int m1 = 0; m1 <= label_max; ++m1) {
    for (int m2 = 0; m2 <= label_max; ++m2) {
      for (int n1 = 0; n1 <= label_max; ++n1) {
        for (int n2 = 0; n2 <= label_max; ++n2) {
          Complex e = pt_energy(params, {m1, m2, n1, n2});
          nlohmann::json entry;
          entry["label"] = {m1, m2, n1, n2};
          entry["re"] = e.real();
          entry["im"] = e.imag();
          arr.push_back(entry);
        }
      }
    }
  }
  return arr.dump();
}

}  // namespace ptpu
