#include "rank2/exact/ratfunc.hpp"

#include "rank2/error.hpp"

namespace rank2 {

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(num_.ring(), Rational(1)) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (!compatible(num_.ring(), den_.ring())) throw ChartMismatch("numerator and denominator rings differ");
  RingPtr r = ring();
  if (num_.is_zero()) {
    num_ = Poly(r);
    den_ = Poly(r, Rational(1));
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  Rational lc = den_.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
  // Keep both parts on the same ring pointer.
  if (!num_.ring()) num_ = Poly(r) + num_;
  if (!den_.ring()) den_ = Poly(r) + den_;
}

Rational RatFunc::constant_value() const {
  if (!is_constant()) throw Error("rational function is not constant");
  return num_.constant_term() / den_.constant_term();
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Normalized{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ + b.num_);
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(Poly(a.ring() ? a.ring() : b.ring()));
  if (a.den_.is_one() && b.den_.is_one()) return RatFunc(a.num_ * b.num_);
  // Cross-cancel before multiplying to keep the gcd small.
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  Poly n = divide_exact(a.num_, g1) * divide_exact(b.num_, g2);
  Poly d = divide_exact(a.den_, g2) * divide_exact(b.den_, g1);
  Rational lc = d.leading().coeff;
  if (lc != 1) {
    Rational inv = 1 / lc;
    n *= inv;
    d *= inv;
  }
  RatFunc r(std::move(n), std::move(d), RatFunc::Normalized{});
  r.normalize();
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero function");
  RatFunc inv(b.den_, b.num_, RatFunc::Normalized{});
  Rational lc = inv.den_.leading().coeff;
  if (lc != 1) {
    Rational s = 1 / lc;
    inv.num_ *= s;
    inv.den_ *= s;
  }
  return a * inv;
}

RatFunc RatFunc::pow(int exponent) const {
  if (exponent < 0) return RatFunc(Rational(1)) / pow(-exponent);
  RatFunc r(num_.pow(unsigned(exponent)), den_.pow(unsigned(exponent)), Normalized{});
  return r;
}

RatFunc RatFunc::diff(std::size_t var) const {
  if (is_constant()) return RatFunc(Poly(ring()));
  if (den_.is_constant()) return RatFunc(num_.diff(var), den_);
  return RatFunc(num_.diff(var) * den_ - num_ * den_.diff(var), den_ * den_);
}

Rational RatFunc::eval(std::span<const Rational> point) const {
  Rational d = den_.eval(point);
  if (sgn(d) == 0) throw PoleError("sample point on pole locus; resample");
  return num_.eval(point) / d;
}

double RatFunc::eval(std::span<const double> point) const {
  return num_.eval(point) / den_.eval(point);
}

bool RatFunc::has_pole_at(std::span<const Rational> point) const {
  return !den_.is_constant() && sgn(den_.eval(point)) == 0;
}

RatFunc RatFunc::substitute(std::span<const Poly> images) const {
  return RatFunc(num_.substitute(images), den_.substitute(images));
}

RatFunc RatFunc::remap(const RingPtr& target, std::span<const std::size_t> index_map) const {
  return RatFunc(num_.remap(target, index_map), den_.remap(target, index_map), Normalized{});
}

RatFunc diff(const RatFunc& f, std::string_view var) {
  if (!f.ring()) throw UnknownVariable("unknown variable '" + std::string(var) + "'");
  return f.diff(f.ring()->require_index(var));
}

std::string to_string(const RatFunc& f) {
  if (f.den().is_one()) return to_string(f.num());
  auto wrap = [](const Poly& p) {
    std::string s = to_string(p);
    return p.size() > 1 || (p.size() == 1 && p.degree() > 0 && p.leading().coeff != 1)
               ? "(" + s + ")"
               : s;
  };
  return wrap(f.num()) + "/" + wrap(f.den());
}

}  // namespace rank2
