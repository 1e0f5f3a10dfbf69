#include "ptpu/jet_polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "ptpu/errors.hpp"

namespace ptpu {

JetIndex::JetIndex(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  for (int e : exponents_) {
    if (e < 0) throw std::invalid_argument("jet exponents must be non-negative");
  }
  while (!exponents_.empty() && exponents_.back() == 0) exponents_.pop_back();
}

JetIndex JetIndex::monomial(int order, int power) {
  if (order < 0) throw std::invalid_argument("jet order must be non-negative");
  std::vector<int> e(order + 1, 0);
  e[order] = power;
  return JetIndex(std::move(e));
}

int JetIndex::exponent(int k) const {
  return (k >= 0 && k < static_cast<int>(exponents_.size())) ? exponents_[k] : 0;
}

int JetIndex::order() const { return static_cast<int>(exponents_.size()) - 1; }

int JetIndex::degree() const {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

bool JetIndex::operator<(const JetIndex& other) const {
  int da = degree();
  int db = other.degree();
  if (da != db) return da < db;
  std::size_t n = std::max(exponents_.size(), other.exponents_.size());
  for (std::size_t k = 0; k < n; ++k) {
    int ea = exponent(static_cast<int>(k));
    int eb = other.exponent(static_cast<int>(k));
    if (ea != eb) return ea < eb;
  }
  return false;
}

DerivativePolynomial DerivativePolynomial::constant(const Complex& c) {
  DerivativePolynomial p;
  p.add_term(JetIndex(), c);
  return p;
}

DerivativePolynomial DerivativePolynomial::jet(int order) {
  DerivativePolynomial p;
  p.add_term(JetIndex::monomial(order), 1.0);
  return p;
}

void DerivativePolynomial::add_term(const JetIndex& index, const Complex& coefficient) {
  if (coefficient == 0.0) return;
  auto [it, inserted] = terms_.emplace(index, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int DerivativePolynomial::max_order() const {
  int order = -1;
  for (const auto& [index, c] : terms_) order = std::max(order, index.order());
  return order;
}

int DerivativePolynomial::max_degree() const {
  int degree = 0;
  for (const auto& [index, c] : terms_) degree = std::max(degree, index.degree());
  return degree;
}

Complex DerivativePolynomial::coefficient(const JetIndex& index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Complex(0.0) : it->second;
}

double DerivativePolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [index, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

DerivativePolynomial& DerivativePolynomial::operator+=(const DerivativePolynomial& other) {
  for (const auto& [index, c] : other.terms_) add_term(index, c);
  return *this;
}

DerivativePolynomial& DerivativePolynomial::operator-=(const DerivativePolynomial& other) {
  for (const auto& [index, c] : other.terms_) add_term(index, -c);
  return *this;
}

DerivativePolynomial& DerivativePolynomial::operator*=(const Complex& scalar) {
  if (scalar == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [index, c] : terms_) c *= scalar;
  return *this;
}

DerivativePolynomial DerivativePolynomial::operator*(const DerivativePolynomial& other) const {
  DerivativePolynomial out;
  for (const auto& [ia, ca] : terms_) {
    for (const auto& [ib, cb] : other.terms_) {
      int n = std::max(ia.order(), ib.order()) + 1;
      std::vector<int> e(std::max(n, 0), 0);
      for (int k = 0; k < static_cast<int>(e.size()); ++k) {
        e[k] = ia.exponent(k) + ib.exponent(k);
      }
      out.add_term(JetIndex(std::move(e)), ca * cb);
    }
  }
  return out;
}

std::string DerivativePolynomial::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [index, c] : terms_) {
    nlohmann::json term;
    term["exponents"] = index.exponents();
    term["re"] = c.real();
    term["im"] = c.imag();
    arr.push_back(term);
  }
  return arr.dump();
}

DerivativePolynomial total_time_derivative(const DerivativePolynomial& p, int max_order) {
  DerivativePolynomial out;
  for (const auto& [index, c] : p.terms()) {
    for (int k = 0; k <= index.order(); ++k) {
      int ek = index.exponent(k);
      if (ek == 0) continue;
      if (k + 1 > max_order) {
        throw JetOrderOverflow("total_time_derivative would produce jet order " +
                               std::to_string(k + 1));
      }
      std::vector<int> e(std::max(index.order() + 2, k + 2), 0);
      for (int j = 0; j < static_cast<int>(e.size()); ++j) e[j] = index.exponent(j);
      e[k] -= 1;
      e[k + 1] += 1;
      out.add_term(JetIndex(std::move(e)), c * static_cast<double>(ek));
    }
  }
  return out;
}

namespace {

DerivativePolynomial partial_derivative(const DerivativePolynomial& p, int k) {
  DerivativePolynomial out;
  for (const auto& [index, c] : p.terms()) {
    int ek = index.exponent(k);
    if (ek == 0) continue;
    std::vector<int> e = index.exponents();
    e[k] -= 1;
    out.add_term(JetIndex(std::move(e)), c * static_cast<double>(ek));
  }
  return out;
}

}  // namespace

DerivativePolynomial euler_lagrange(const DerivativePolynomial& p, int max_order) {
  DerivativePolynomial out;
  double sign = 1.0;
  for (int k = 0; k <= p.max_order(); ++k, sign = -sign) {
    DerivativePolynomial term = partial_derivative(p, k);
    for (int j = 0; j < k; ++j) term = total_time_derivative(term, max_order);
    out += sign * term;
  }
  return out;
}

DerivativePolynomial substitute_linear(const DerivativePolynomial& p,
                                       const DerivativePolynomial& image, int max_order) {
  for (const auto& [index, c] : image.terms()) {
    if (index.degree() != 1) {
      throw NonlinearSubstitution("substitution image must be linear in the new jets");
    }
  }
  // derivative images: old q_k = (d/dt)^k image
  std::size_t image_count = p.max_order() < 0 ? 0 : static_cast<std::size_t>(p.max_order()) + 1;
  std::vector<DerivativePolynomial> images(image_count);
  if (!images.empty()) {
    images[0] = image;
    for (std::size_t k = 1; k < images.size(); ++k) {
      images[k] = total_time_derivative(images[k - 1], max_order);
    }
  }
  DerivativePolynomial out;
  for (const auto& [index, c] : p.terms()) {
    DerivativePolynomial term = DerivativePolynomial::constant(c);
    for (int k = 0; k <= index.order(); ++k) {
      for (int rep = 0; rep < index.exponent(k); ++rep) term = term * images[k];
    }
    out += term;
  }
  return out;
}

bool equivalent_up_to_total_derivative(const DerivativePolynomial& p1,
                                       const DerivativePolynomial& p2, double tol,
                                       int max_order) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be non-negative");
  DerivativePolynomial residual = euler_lagrange(p1 - p2, max_order);
  return residual.max_abs_coefficient() <= tol;
}

}  // namespace ptpu
