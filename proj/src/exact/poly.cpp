#include "rank2/exact/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "rank2/error.hpp"

namespace rank2 {

// ---------------------------------------------------------------- Ring

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

RingPtr Ring::make(std::vector<std::string> names) {
  if (names.size() > kMaxVars) {
    throw Error("ring has " + std::to_string(names.size()) + " variables; the limit is " +
                std::to_string(kMaxVars));
  }
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!is_identifier(n)) throw Error("invalid variable name '" + n + "'");
    if (!seen.insert(n).second) throw Error("duplicate variable name '" + n + "'");
  }
  return RingPtr(new Ring(std::move(names)));
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t Ring::require_index(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw UnknownVariable("unknown variable '" + std::string(name) + "'");
}

bool compatible(const RingPtr& a, const RingPtr& b) {
  if (!a || !b || a == b) return true;
  return *a == *b;
}

// ------------------------------------------------------------ Monomial

Monomial Monomial::variable(std::size_t index, unsigned power) {
  if (index >= kMaxVars) throw Error("variable index out of range");
  if (power > 255) throw Error("exponent overflow");
  Monomial m;
  m.exp[index] = static_cast<std::uint8_t>(power);
  m.degree = static_cast<std::uint16_t>(power);
  return m;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned e = unsigned(exp[i]) + unsigned(other.exp[i]);
    if (e > 255) throw Error("exponent overflow");
    m.exp[i] = static_cast<std::uint8_t>(e);
  }
  m.degree = static_cast<std::uint16_t>(degree + other.degree);
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree > other.degree) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (exp[i] > other.exp[i]) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = other.exp[i] - exp[i];
  m.degree = static_cast<std::uint16_t>(other.degree - degree);
  return m;
}

int compare_grlex(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree > b.degree ? 1 : -1;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] > b.exp[i] ? 1 : -1;
  }
  return 0;
}

namespace {

bool grlex_greater(const Term& a, const Term& b) { return compare_grlex(a.mono, b.mono) > 0; }

void check_ring(const RingPtr& a, const RingPtr& b) {
  if (!compatible(a, b)) throw ChartMismatch("polynomials live in different rings");
}

// Sort descending and merge equal monomials in place.
void canonicalize_terms(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), grlex_greater);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    Rational sum = terms[i].coeff;
    while (j < terms.size() && terms[j].mono == terms[i].mono) {
      sum += terms[j].coeff;
      ++j;
    }
    if (sgn(sum) != 0) {
      terms[out].mono = terms[i].mono;
      terms[out].coeff = std::move(sum);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

// ---------------------------------------------------------------- Poly

Poly::Poly(RingPtr ring, const Rational& constant) : ring_(std::move(ring)) {
  if (sgn(constant) != 0) terms_.push_back(Term{Monomial{}, constant});
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  if (!ring || index >= ring->size()) throw Error("variable index out of range");
  return monomial(std::move(ring), Monomial::variable(index), Rational(1));
}

Poly Poly::monomial(RingPtr ring, const Monomial& mono, const Rational& coeff) {
  Poly p(std::move(ring));
  if (sgn(coeff) != 0) p.terms_.push_back(Term{mono, coeff});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  canonicalize_terms(terms);
  p.terms_ = std::move(terms);
  return p;
}

std::size_t Poly::nvars() const noexcept { return ring_ ? ring_->size() : 0; }

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.degree == 0);
}

bool Poly::is_one() const { return is_constant() && !terms_.empty() && terms_.front().coeff == 1; }

Rational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.degree == 0) return terms_.back().coeff;
  return Rational(0);
}

int Poly::degree() const noexcept { return terms_.empty() ? -1 : terms_.front().mono.degree; }

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, int(t.mono.exp[var]));
  return d;
}

bool Poly::involves(std::size_t var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const Term& t) { return t.mono.exp[var] != 0; });
}

void Poly::adopt_ring(const Poly& other) {
  check_ring(ring_, other.ring_);
  if (!ring_) ring_ = other.ring_;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& other) {
  adopt_ring(other);
  if (other.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    int c = compare_grlex(terms_[i].mono, other.terms_[j].mono);
    if (c > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (c < 0) {
      out.push_back(other.terms_[j++]);
    } else {
      Rational s = terms_[i].coeff + other.terms_[j].coeff;
      if (sgn(s) != 0) out.push_back(Term{terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
  for (; j < other.terms_.size(); ++j) out.push_back(other.terms_[j]);
  terms_ = std::move(out);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) { return *this += -other; }

Poly operator*(const Poly& a, const Poly& b) {
  check_ring(a.ring_, b.ring_);
  Poly r(a.ring_ ? a.ring_ : b.ring_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (b.is_constant()) return a * b.terms_.front().coeff;
  if (a.is_constant()) {
    Poly s = b * a.terms_.front().coeff;
    s.ring_ = r.ring_;
    return s;
  }
  std::vector<Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) prod.push_back(Term{s.mono * t.mono, s.coeff * t.coeff});
  }
  canonicalize_terms(prod);
  r.terms_ = std::move(prod);
  return r;
}

Poly& Poly::operator*=(const Poly& other) {
  *this = *this * other;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (!compatible(a.ring_, b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(ring_, Rational(1));
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result *= base;
    exponent >>= 1u;
    if (exponent > 0) base *= base;
  }
  return result;
}

Poly Poly::diff(std::size_t var) const {
  if (var >= nvars()) throw UnknownVariable("derivative with respect to a variable outside the ring");
  Poly r(ring_);
  for (const auto& t : terms_) {
    unsigned e = t.mono.exp[var];
    if (e == 0) continue;
    Term d{t.mono, t.coeff * e};
    d.mono.exp[var] = static_cast<std::uint8_t>(e - 1);
    d.mono.degree = static_cast<std::uint16_t>(d.mono.degree - 1);
    r.terms_.push_back(std::move(d));
  }
  // Lowering one exponent can reorder terms.
  std::sort(r.terms_.begin(), r.terms_.end(), grlex_greater);
  return r;
}

Rational Poly::eval(std::span<const Rational> point) const {
  if (point.size() != nvars() && !terms_.empty() && !is_constant()) {
    throw Error("evaluation point has " + std::to_string(point.size()) + " coordinates, ring has " +
                std::to_string(nvars()));
  }
  const std::size_t n = nvars();
  // Powers are cached per variable since exponents are small.
  std::vector<std::vector<Rational>> powers(n);
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < n; ++i) {
      unsigned e = t.mono.exp[i];
      if (e == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Rational(1));
      while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
      v *= cache[e];
    }
    sum += v;
  }
  return sum;
}

double Poly::eval(std::span<const double> point) const {
  const std::size_t n = nvars();
  if (point.size() != n && !is_constant()) throw Error("evaluation point dimension mismatch");
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff.get_d();
    for (std::size_t i = 0; i < n; ++i) {
      unsigned e = t.mono.exp[i];
      for (unsigned k = 0; k < e; ++k) v *= point[i];
    }
    sum += v;
  }
  return sum;
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (images.size() != nvars() && !is_constant()) {
    throw Error("substitution needs one image per variable");
  }
  RingPtr target;
  for (const auto& im : images) {
    check_ring(target, im.ring());
    if (!target) target = im.ring();
  }
  std::vector<std::vector<Poly>> powers(images.size());
  std::vector<Term> acc;
  Poly sum(target);
  for (const auto& t : terms_) {
    Poly v(target, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i) {
      unsigned e = t.mono.exp[i];
      if (e == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Poly(target, Rational(1)));
      while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
      v *= cache[e];
    }
    acc.insert(acc.end(), v.terms().begin(), v.terms().end());
  }
  return from_terms(target, std::move(acc));
}

Poly Poly::remap(const RingPtr& target, std::span<const std::size_t> index_map) const {
  if (index_map.size() < nvars()) throw Error("remap needs an index for every variable");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    m.degree = t.mono.degree;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (index_map[i] >= target->size()) throw Error("remap index out of range");
      m.exp[index_map[i]] = t.mono.exp[i];
    }
    out.push_back(Term{m, t.coeff});
  }
  return from_terms(target, std::move(out));
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  int d = degree_in(var);
  std::vector<std::vector<Term>> buckets(std::size_t(std::max(d, 0) + 1));
  for (const auto& t : terms_) {
    Term s = t;
    unsigned e = s.mono.exp[var];
    s.mono.exp[var] = 0;
    s.mono.degree = static_cast<std::uint16_t>(s.mono.degree - e);
    buckets[e].push_back(std::move(s));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
  return out;
}

Poly Poly::leading_coefficient_in(std::size_t var) const {
  if (terms_.empty()) return Poly(ring_);
  return coefficients_in(var).back();
}

Rational Poly::rational_content() const {
  if (terms_.empty()) return Rational(1);
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(num_gcd, den_lcm);
  c.canonicalize();
  return c;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_.front().coeff;
  return *this * inv;
}

// -------------------------------------------------------------- division

std::optional<Poly> try_divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  check_ring(a.ring(), b.ring());
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  if (a.is_zero()) return Poly(ring);
  if (b.is_constant()) {
    Poly q = a * (1 / b.leading().coeff);
    return Poly::from_terms(ring, q.terms());
  }
  const Term& lb = b.leading();
  Poly rem = a;
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    if (!lb.mono.divides(lr.mono)) return std::nullopt;
    Term q{lb.mono.quotient_of(lr.mono), lr.coeff / lb.coeff};
    rem -= Poly::monomial(ring, q.mono, q.coeff) * b;
    quotient.push_back(std::move(q));
  }
  return Poly::from_terms(ring, std::move(quotient));
}

Poly divide_exact(const Poly& a, const Poly& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error("polynomial division is not exact");
  return *std::move(q);
}

// ------------------------------------------------------------------- gcd

namespace {

Poly gcd_rec(const Poly& a, const Poly& b);

int first_involved(const Poly& a, const Poly& b) {
  std::size_t n = std::max(a.nvars(), b.nvars());
  for (std::size_t v = 0; v < n; ++v) {
    if (a.involves(v) || b.involves(v)) return int(v);
  }
  return -1;
}

// gcd over Q[others] of the coefficients of p seen as a polynomial in var.
Poly content_in(const Poly& p, std::size_t var) {
  auto coeffs = p.coefficients_in(var);
  Poly g(p.ring());
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_rec(g, c);
    if (g.is_constant()) return Poly(p.ring(), Rational(1));
  }
  return g;
}

// Primitive part over Z[others]: removes the content in var and the rational content.
Poly primitive_part(const Poly& p, std::size_t var) {
  Poly q = divide_exact(p, content_in(p, var));
  return q * (1 / q.rational_content());
}

// Pseudo-remainder of a by b in var, up to a nonzero factor.
Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Poly lcb = b.leading_coefficient_in(var);
  Poly r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    int dr = r.degree_in(var);
    Poly lcr = r.leading_coefficient_in(var);
    Poly shift = Poly::monomial(r.ring() ? r.ring() : b.ring(), Monomial::variable(var, unsigned(dr - db)),
                                Rational(1));
    r = lcb * r - lcr * shift * b;
  }
  return r;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
  RingPtr ring = a.ring() ? a.ring() : b.ring();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(ring, Rational(1));
  if (auto q = try_divide(a, b)) return b.monic();
  if (auto q = try_divide(b, a)) return a.monic();

  int v = first_involved(a, b);
  auto var = std::size_t(v);
  if (!a.involves(var)) return gcd_rec(a, content_in(b, var));
  if (!b.involves(var)) return gcd_rec(content_in(a, var), b);

  Poly ca = content_in(a, var);
  Poly cb = content_in(b, var);
  Poly c = gcd_rec(ca, cb);
  Poly A = divide_exact(a, ca);
  Poly B = divide_exact(b, cb);
  A *= 1 / A.rational_content();
  B *= 1 / B.rational_content();
  if (A.degree_in(var) < B.degree_in(var)) std::swap(A, B);
  while (true) {
    Poly r = pseudo_remainder(A, B, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      B = Poly(ring, Rational(1));
      break;
    }
    A = std::move(B);
    B = primitive_part(r, var);
  }
  if (!B.is_constant()) B = primitive_part(B, var);
  return (c * B).monic();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  check_ring(a.ring(), b.ring());
  return gcd_rec(a, b);
}

// --------------------------------------------------------------- printing

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = (c == 1);
    if (!unit || t.mono.degree == 0) {
      out << to_string(c);
      if (t.mono.degree > 0) out << "*";
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < p.nvars(); ++i) {
      unsigned e = t.mono.exp[i];
      if (e == 0) continue;
      if (!first_factor) out << "*";
      first_factor = false;
      out << p.ring()->name(i);
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

}  // namespace rank2
