#pragma once

#include <span>
#include <string>

#include "rank2/exact/poly.hpp"

namespace rank2 {

// Rational function num/den over Q, eagerly normalized: gcd(num, den) = 1 and
// the grlex-leading coefficient of den is +1. Zero is 0/1. Zero tests are
// therefore structural.
class RatFunc {
 public:
  RatFunc() : den_(Rational(1)) {}
  RatFunc(Poly num);  // NOLINT
  RatFunc(Poly num, Poly den);
  RatFunc(const Rational& c) : RatFunc(Poly(c)) {}  // NOLINT
  RatFunc(long c) : RatFunc(Poly(c)) {}            // NOLINT

  static RatFunc variable(const RingPtr& ring, std::size_t index) {
    return RatFunc(Poly::variable(ring, index));
  }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  const RingPtr& ring() const noexcept { return num_.ring() ? num_.ring() : den_.ring(); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  // Requires is_constant().
  Rational constant_value() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  // Throws DivisionByZero when b is the zero function.
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  RatFunc pow(int exponent) const;
  RatFunc diff(std::size_t var) const;
  // Throws PoleError when the denominator vanishes at the point.
  Rational eval(std::span<const Rational> point) const;
  double eval(std::span<const double> point) const;
  // True when the denominator vanishes at the point.
  bool has_pole_at(std::span<const Rational> point) const;

  RatFunc substitute(std::span<const Poly> images) const;
  RatFunc remap(const RingPtr& target, std::span<const std::size_t> index_map) const;

 private:
  struct Normalized {};
  RatFunc(Poly num, Poly den, Normalized) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Poly num_;
  Poly den_;
};

// Derivative by variable name; throws UnknownVariable.
RatFunc diff(const RatFunc& f, std::string_view var);

std::string to_string(const RatFunc& f);

}  // namespace rank2
