#pragma once

#include <gmpxx.h>

#include <string>

namespace skx {

// Exact arbitrary-precision rational number. GMP keeps values canonical
// (reduced, denominator > 0) as long as they are built through mpq_class
// arithmetic; the only construction that needs an explicit canonicalize()
// is the raw (num, den) one, which make_rational wraps.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace skx
