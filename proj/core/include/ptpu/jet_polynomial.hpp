#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "ptpu/complex_format.hpp"

namespace ptpu {

/// Monomial in jet variables q_0, q_1, ... where q_k stands for the k-th time
/// derivative of the coordinate. exponents()[k] is the power of q_k; trailing
/// zero exponents are normalized away, so equal monomials compare equal.
class JetIndex {
 public:
  JetIndex() = default;
  explicit JetIndex(std::vector<int> exponents);

  /// q_order^power
  static JetIndex monomial(int order, int power = 1);

  int exponent(int k) const;
  /// Highest derivative order present, -1 for the constant monomial.
  int order() const;
  /// Total degree (sum of exponents).
  int degree() const;
  const std::vector<int>& exponents() const { return exponents_; }

  bool operator==(const JetIndex& other) const { return exponents_ == other.exponents_; }
  /// Graded lexicographic order: by degree first, then lexicographic.
  bool operator<(const JetIndex& other) const;

 private:
  std::vector<int> exponents_;
};

constexpr int kDefaultMaxJetOrder = 6;

/// Polynomial in jet variables with complex coefficients; the carrier for all
/// Lagrangians. Terms with coefficient exactly zero are dropped; term order is
/// graded lexicographic, which fixes the serialization.
class DerivativePolynomial {
 public:
  DerivativePolynomial() = default;

  static DerivativePolynomial constant(const Complex& c);
  /// The single jet variable q_order.
  static DerivativePolynomial jet(int order);

  void add_term(const JetIndex& index, const Complex& coefficient);

  const std::map<JetIndex, Complex>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_order() const;
  int max_degree() const;
  Complex coefficient(const JetIndex& index) const;
  double max_abs_coefficient() const;

  DerivativePolynomial& operator+=(const DerivativePolynomial& other);
  DerivativePolynomial& operator-=(const DerivativePolynomial& other);
  DerivativePolynomial& operator*=(const Complex& scalar);
  friend DerivativePolynomial operator+(DerivativePolynomial a, const DerivativePolynomial& b) {
    return a += b;
  }
  friend DerivativePolynomial operator-(DerivativePolynomial a, const DerivativePolynomial& b) {
    return a -= b;
  }
  friend DerivativePolynomial operator*(DerivativePolynomial a, const Complex& s) { return a *= s; }
  friend DerivativePolynomial operator*(const Complex& s, DerivativePolynomial a) { return a *= s; }
  DerivativePolynomial operator*(const DerivativePolynomial& other) const;

  bool operator==(const DerivativePolynomial& other) const { return terms_ == other.terms_; }

  /// Canonical-order JSON: [{"exponents":[...],"re":...,"im":...}, ...]
  std::string to_json() const;

 private:
  std::map<JetIndex, Complex> terms_;
};

/// d/dt under the jet rule d/dt q_k = q_{k+1}. Raises the order by at most one;
/// throws JetOrderOverflow past max_order.
DerivativePolynomial total_time_derivative(const DerivativePolynomial& p,
                                           int max_order = kDefaultMaxJetOrder);

/// Variational derivative sum_k (-1)^k (d/dt)^k dP/dq_k. Annihilates total
/// derivatives. Intermediate terms may need up to twice the input order, so
/// callers probing high-order identities must widen max_order.
DerivativePolynomial euler_lagrange(const DerivativePolynomial& p,
                                    int max_order = kDefaultMaxJetOrder);

/// Rewrites p (a polynomial in the old coordinate's jets) through old = image,
/// where image is linear in the new coordinate's jets. Exact on coefficients.
/// Throws NonlinearSubstitution if image has a term of degree != 1.
DerivativePolynomial substitute_linear(const DerivativePolynomial& p,
                                       const DerivativePolynomial& image,
                                       int max_order = kDefaultMaxJetOrder);

/// True iff every coefficient of euler_lagrange(p1 - p2) has magnitude <= tol.
bool equivalent_up_to_total_derivative(const DerivativePolynomial& p1,
                                       const DerivativePolynomial& p2, double tol,
                                       int max_order = kDefaultMaxJetOrder);

}  // namespace ptpu
