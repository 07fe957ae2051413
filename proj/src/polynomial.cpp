#include "skx/polynomial.hpp"

#include <sstream>

#include "skx/errors.hpp"

namespace skx {

namespace {
const Rational kZero = 0;
}

Polynomial Polynomial::constant(Rational c) {
  Polynomial p;
  if (!skx::is_zero(c)) p.coeffs_.push_back(std::move(c));
  return p;
}

Polynomial Polynomial::variable() { return monomial(1, 1); }

Polynomial Polynomial::monomial(Rational c, int degree) {
  Polynomial p;
  if (!skx::is_zero(c)) {
    p.coeffs_.assign(degree + 1, kZero);
    p.coeffs_.back() = std::move(c);
  }
  return p;
}

const Rational& Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return kZero;
  return coeffs_[i];
}

const Rational& Polynomial::trailing() const {
  for (const auto& c : coeffs_)
    if (!skx::is_zero(c)) return c;
  return kZero;
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && skx::is_zero(coeffs_.back())) coeffs_.pop_back();
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), kZero);
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (coeffs_.size() < rhs.coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), kZero);
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, kZero);
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (skx::is_zero(c)) {
    coeffs_.clear();
    return *this;
  }
  for (auto& a : coeffs_) a *= c;
  return *this;
}

std::string Polynomial::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i <= degree(); ++i) {
    const Rational& c = coeffs_[i];
    if (skx::is_zero(c)) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
      first = false;
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    const bool unit = (a == 1);
    if (i == 0 || !unit) out << to_string(a);
    if (i > 0) {
      if (!unit) out << "*";
      out << var;
      if (i > 1) out << "^" << i;
    }
  }
  return out.str();
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw error("polynomial division by zero");
  std::vector<Rational> rem(num.coeffs());
  const int dd = den.degree();
  const int dn = num.degree();
  if (dn < dd) return {Polynomial{}, num};
  std::vector<Rational> quot(dn - dd + 1, 0);
  for (int i = dn; i >= dd; --i) {
    if (skx::is_zero(rem[i])) continue;
    Rational f = rem[i] / den.leading();
    quot[i - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * den.coeff(j);
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Polynomial r2 = divmod(r0, r1).second;
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  if (r0.is_zero()) return r0;
  // Monic normalization makes the gcd unique.
  Rational inv = Rational(1) / r0.leading();
  return r0 * inv;
}

Polynomial pow(const Polynomial& base, unsigned exponent) {
  Polynomial acc = Polynomial::constant(1);
  Polynomial b = base;
  for (unsigned e = exponent; e > 0; e >>= 1) {
    if (e & 1u) acc *= b;
    if (e > 1) b *= b;
  }
  return acc;
}

}  // namespace skx
