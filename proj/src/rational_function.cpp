#include "skx/rational_function.hpp"

#include <sstream>

#include "skx/errors.hpp"

namespace skx {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
  }
  // Scale so den has coprime integer coefficients and positive leading one.
  BigInt den_lcm = 1, num_gcd = 0;
  for (const auto& c : den_.coeffs()) {
    if (skx::is_zero(c)) continue;
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    BigInt n = abs(c.get_num());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale = make_rational(den_lcm, num_gcd);
  if (sgn(den_.leading()) < 0) scale = -scale;
  num_ *= scale;
  den_ *= scale;
}

Rational RationalFunction::eval_at(const Rational& x0) const {
  Rational d = den_.eval(x0);
  if (skx::is_zero(d)) throw pole_error("rational function evaluated at a pole");
  return num_.eval(x0) / d;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.is_zero()) throw error("division by the zero rational function");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator*=(const Rational& c) {
  num_ *= c;
  normalize();
  return *this;
}

namespace {

// Presentation sign: flip num and den together when den's lowest-degree
// coefficient is negative, so 1/(x-1) prints as -1/(1-x). Same function,
// nicer to read against the usual (1-beta^2)^d closed forms.
std::pair<Polynomial, Polynomial> display_form(const RationalFunction& f) {
  if (!f.den().is_zero() && sgn(f.den().trailing()) < 0) return {-f.num(), -f.den()};
  return {f.num(), f.den()};
}

std::string coeff_list(const Polynomial& p) {
  std::ostringstream out;
  if (p.is_zero()) return "0/1";
  for (int i = 0; i <= p.degree(); ++i) {
    if (i) out << ' ';
    const Rational& c = p.coeff(i);
    out << c.get_num().get_str() << '/' << c.get_den().get_str();
  }
  return out.str();
}

// Polynomial in beta with only even powers: p(x) with x = beta^2.
std::string latex_poly(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i <= p.degree(); ++i) {
    const Rational& c = p.coeff(i);
    if (skx::is_zero(c)) continue;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) out << "-";
      first = false;
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    const bool unit = (a == 1);
    if (i == 0 || !unit) {
      if (a.get_den() == 1)
        out << a.get_num().get_str();
      else
        out << "\\frac{" << a.get_num().get_str() << "}{" << a.get_den().get_str() << "}";
    }
    if (i > 0) out << "\\beta^{" << 2 * i << "}";
  }
  return out.str();
}

}  // namespace

std::string to_plain_text(const RationalFunction& f) {
  auto [num, den] = display_form(f);
  return coeff_list(num) + " / " + coeff_list(den);
}

std::string to_latex(const RationalFunction& f) {
  auto [num, den] = display_form(f);
  if (den == Polynomial::constant(1)) return latex_poly(num);
  return "\\frac{" + latex_poly(num) + "}{" + latex_poly(den) + "}";
}

std::string to_pretty(const RationalFunction& f) {
  auto [num, den] = display_form(f);
  if (den == Polynomial::constant(1)) return num.str();
  return "(" + num.str() + ") / (" + den.str() + ")";
}

}  // namespace skx
