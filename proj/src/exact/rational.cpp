#include "rank2/exact/rational.hpp"

#include "rank2/error.hpp"

namespace rank2 {

Rational parse_rational(std::string_view text) {
  Rational r;
  if (r.set_str(std::string(text), 10) != 0) {
    throw Error("malformed rational literal '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw DivisionByZero("rational literal with zero denominator");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

}  // namespace rank2
