#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ptpu/params.hpp"

namespace ptpu {

/// Dense operator on a truncated multi-mode Fock space. Basis ordering is
/// row-major over occupation tuples with the first mode slowest; dims holds
/// the per-mode cutoffs (levels 0..cutoff per mode).
struct FockOperator {
  Eigen::MatrixXcd matrix;
  std::vector<int> dims;

  int dimension() const { return static_cast<int>(matrix.rows()); }
  int flat_index(std::span<const int> occupation) const;
  std::vector<int> occupation(int flat) const;
};

FockOperator fock_identity(const std::vector<int>& cutoffs);
/// sqrt(k) lowering matrix embedded on the given mode.
FockOperator mode_lowering(const std::vector<int>& cutoffs, int mode);
/// sqrt(k+1) raising matrix embedded on the given mode.
FockOperator mode_raising(const std::vector<int>& cutoffs, int mode);

/// Non-Hermitian ladder pair for one PT-completed oscillator on the two-mode
/// space [holomorphic, anti-holomorphic]. a and c_plus act on the first
/// factor, c and a_plus on the second; the two families commute exactly.
/// [a, c_plus] is the identity except for a -n_max entry at the top level.
struct LadderSet {
  FockOperator a;       // (1/N) * lowering, holomorphic
  FockOperator c_plus;  // N * raising, holomorphic
  FockOperator c;       // conj(N) * lowering, anti-holomorphic
  FockOperator a_plus;  // (1/conj(N)) * raising, anti-holomorphic
  Complex n_const;
};

LadderSet build_ladders(int n_max, const Complex& n_const);

struct SpectrumLabel {
  int m1 = 0, m2 = 0, n1 = 0, n2 = 0;
};

/// hbar Omega1 (m1+1/2) + hbar Omega2 (m2+1/2), the holomorphic-sector energy.
Complex holomorphic_energy(const TwoOscillatorParams& params, int m1, int m2);
/// Full PT-completed energy; satisfies conj(E(m;n)) = E(n;m) exactly.
Complex pt_energy(const TwoOscillatorParams& params, const SpectrumLabel& label);

/// H_H, H_A and H = H_H + H_A on the four-mode space [m1, m2, n1, n2] with the
/// given per-mode cutoff. All three are diagonal in the occupation basis;
/// interior diagonal entries equal pt_energy.
struct HamiltonianSet {
  FockOperator h_h;
  FockOperator h_a;
  FockOperator h;
};

HamiltonianSet build_hamiltonians(const TwoOscillatorParams& params, int n_max);

/// exp(-H t/(i hbar)) O exp(+H t/(i hbar)). Diagonal H is exponentiated
/// entrywise; anything else goes through scaling-and-squaring (Pade 13).
FockOperator heisenberg_evolve(const FockOperator& h, const FockOperator& op, double t,
                               double hbar);

/// H = H_H + H_A for a single PT-completed oscillator on [hol, anti].
FockOperator single_pt_hamiltonian(const SingleOscillatorParams& params, int n_max);
/// Q(0) = sqrt(hbar/(2 M Omega)) (N a + c^+/N) on the same space.
FockOperator position_operator(const SingleOscillatorParams& params, int n_max,
                               const Complex& n_const);
/// P(0) = -i sqrt(hbar M Omega / 2) (N a - c^+/N).
FockOperator momentum_operator(const SingleOscillatorParams& params, int n_max,
                               const Complex& n_const);

/// <<0| T[Q(t1) Q(t2)] |0>> by truncated-matrix evaluation; equals
/// hbar/(2 M Omega) e^{-i Omega |t1-t2|} and is independent of n_const.
Complex t_ordered_two_point(const SingleOscillatorParams& params, double t1, double t2,
                            int n_max = 8, const Complex& n_const = Complex(1.0));

/// JSON array of {label:[m1,m2,n1,n2], re, im} sorted by label.
std::string spectrum_json(const TwoOscillatorParams& params, int label_max);

}  // namespace ptpu
