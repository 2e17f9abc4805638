#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rank2/exact/rational.hpp"

namespace rank2 {

// Exponent vectors are stored inline; every ring in the library (including
// cotangent charts, which double the base dimension) must fit.
inline constexpr std::size_t kMaxVars = 32;

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Ordered list of distinct variable names shared by every polynomial built on it.
class Ring {
 public:
  static RingPtr make(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  // Throws UnknownVariable.
  std::size_t require_index(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

bool is_identifier(std::string_view name);

struct Monomial {
  std::array<std::uint8_t, kMaxVars> exp{};
  std::uint16_t degree = 0;

  static Monomial variable(std::size_t index, unsigned power = 1);
  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  // Requires divides(other).
  Monomial quotient_of(const Monomial& other) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.degree == b.degree && a.exp == b.exp;
  }
};

// Graded-lexicographic comparison; positive when a > b.
int compare_grlex(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse multivariate polynomial over Q. Terms are kept sorted in decreasing
// grlex order with no zero coefficients, so structural equality is value
// equality. A polynomial without a ring is a bare constant and adopts the ring
// of whatever it is combined with.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
  Poly(RingPtr ring, const Rational& constant);
  Poly(const Rational& constant) : Poly(nullptr, constant) {}  // NOLINT
  Poly(long constant) : Poly(nullptr, Rational(constant)) {}   // NOLINT

  static Poly variable(RingPtr ring, std::size_t index);
  static Poly monomial(RingPtr ring, const Monomial& mono, const Rational& coeff);
  // Sorts, combines like terms and drops zeros.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept;
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const;
  // Coefficient of the unit monomial.
  Rational constant_term() const;
  const Term& leading() const { return terms_.front(); }
  // -1 for the zero polynomial.
  int degree() const noexcept;
  int degree_in(std::size_t var) const;
  bool involves(std::size_t var) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  Poly pow(unsigned exponent) const;
  Poly diff(std::size_t var) const;
  Rational eval(std::span<const Rational> point) const;
  double eval(std::span<const double> point) const;

  // Replaces variable i by images[i]; images live in a common target ring.
  Poly substitute(std::span<const Poly> images) const;
  // Re-embeds into `target`, sending variable i to target variable index_map[i].
  Poly remap(const RingPtr& target, std::span<const std::size_t> index_map) const;

  // coefficients_in(v)[k] is the coefficient of v^k (a polynomial free of v).
  std::vector<Poly> coefficients_in(std::size_t var) const;
  Poly leading_coefficient_in(std::size_t var) const;

  // Positive rational c such that this/c has coprime integer coefficients.
  Rational rational_content() const;
  // Scales so that the grlex-leading coefficient is 1 (zero stays zero).
  Poly monic() const;

 private:
  void adopt_ring(const Poly& other);
  RingPtr ring_;
  std::vector<Term> terms_;
};

// Ring compatibility: equal pointers, equal names, or at least one ringless.
bool compatible(const RingPtr& a, const RingPtr& b);

// Exact quotient a/b, or nullopt when b does not divide a. Throws on b == 0.
std::optional<Poly> try_divide(const Poly& a, const Poly& b);
// Throws Error when the division is not exact.
Poly divide_exact(const Poly& a, const Poly& b);

// Greatest common divisor over Q[vars], normalized monic (gcd(0,0) = 0).
Poly gcd(const Poly& a, const Poly& b);

std::string to_string(const Poly& p);

}  // namespace rank2
