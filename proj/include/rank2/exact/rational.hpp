#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace rank2 {

// Arbitrary-precision rational, always in lowest terms with positive
// denominator (GMP keeps mpq_class canonical after every operation).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p" or "p/q" with optional leading sign.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace rank2
