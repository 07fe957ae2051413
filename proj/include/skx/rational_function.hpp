#pragma once

#include <string>

#include "skx/polynomial.hpp"

namespace skx {

/// Exact univariate rational function in x = beta^2.
///
/// Values are kept in a canonical form so that equality of mathematical
/// values is plain structural equality:
///   - gcd(num, den) = 1 (monic gcd divided out),
///   - den has integer coefficients with content 1,
///   - den's leading (highest-degree) coefficient is positive.
/// The numerator keeps whatever rational coefficients the scaling leaves.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}  // zero
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction constant(Rational c) {
    return RationalFunction(Polynomial::constant(std::move(c)), Polynomial::constant(1));
  }
  static RationalFunction from_poly(Polynomial p) {
    return RationalFunction(std::move(p), Polynomial::constant(1));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // Throws pole_error if x0 is a root of the denominator.
  Rational eval_at(const Rational& x0) const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  // Throws error on division by the zero function.
  RationalFunction& operator/=(const RationalFunction& rhs);
  RationalFunction& operator*=(const Rational& c);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator*(RationalFunction a, const Rational& c) { return a *= c; }
  friend RationalFunction operator*(const Rational& c, RationalFunction a) { return a *= c; }

  bool operator==(const RationalFunction&) const = default;

 private:
  void normalize();
  Polynomial num_, den_;
};

// Exact serialization: numerator and denominator coefficient lists by
// ascending degree, each coefficient as num/den integer pair, the two lists
// separated by a lone "/" token. Example for x/(1-x): "0/1 1/1 / 1/1 -1/1".
std::string to_plain_text(const RationalFunction& f);

// LaTeX fraction with x rendered as beta^2.
std::string to_latex(const RationalFunction& f);

// Human-oriented rendering, e.g. "x / (1 - x)".
std::string to_pretty(const RationalFunction& f);

}  // namespace skx
