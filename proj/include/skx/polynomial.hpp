#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skx/rational.hpp"

namespace skx {

/// Dense univariate polynomial over exact rationals.
///
/// The variable is x = beta^2 everywhere in this project; every power of
/// beta that shows up in the series machinery is even, so working in x
/// halves all degrees. Coefficients are stored by ascending degree. The
/// zero polynomial is the empty coefficient vector; for nonzero
/// polynomials the highest-degree coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static Polynomial constant(Rational c);
  static Polynomial variable();  // x
  static Polynomial monomial(Rational c, int degree);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  // Coefficient of x^i; zero outside the stored range.
  const Rational& coeff(int i) const;
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  const Rational& leading() const { return coeffs_.back(); }
  // Lowest-degree nonzero coefficient (pre: nonzero polynomial).
  const Rational& trailing() const;

  Rational eval(const Rational& x) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  bool operator==(const Polynomial&) const = default;

  // Human-readable form, e.g. "1 - 4*x + x^2"; var names the variable.
  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Quotient and remainder with deg(rem) < deg(divisor). Divisor must be nonzero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);

// Monic greatest common divisor (Euclid); gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

Polynomial pow(const Polynomial& base, unsigned exponent);

}  // namespace skx
