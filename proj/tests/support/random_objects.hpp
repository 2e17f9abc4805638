#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rank2/exact/ratfunc.hpp"
#include "rank2/geometry/fields.hpp"

namespace rank2::testing {

// Seeded generators for property tests. Values are drawn with explicit
// modular arithmetic so sequences are identical across standard libraries.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(engine_() % span);
  }

  Rational small_rational() {
    long num = integer(-5, 5);
    long den = integer(1, 4);
    return make_rational(num, den);
  }

  Poly poly(const RingPtr& ring, int max_degree, int max_terms) {
    std::vector<Term> terms;
    int count = int(integer(1, max_terms));
    for (int t = 0; t < count; ++t) {
      Monomial m;
      int deg = int(integer(0, max_degree));
      for (int k = 0; k < deg; ++k) {
        auto v = static_cast<std::size_t>(integer(0, long(ring->size()) - 1));
        m.exp[v]++;
        m.degree++;
      }
      terms.push_back(Term{m, small_rational()});
    }
    return Poly::from_terms(ring, std::move(terms));
  }

  Poly nonzero_poly(const RingPtr& ring, int max_degree, int max_terms) {
    Poly p = poly(ring, max_degree, max_terms);
    while (p.is_zero()) p = poly(ring, max_degree, max_terms);
    return p;
  }

  RatFunc ratfunc(const RingPtr& ring, int max_degree, int max_terms) {
    return RatFunc(poly(ring, max_degree, max_terms), nonzero_poly(ring, max_degree, max_terms));
  }

  VectorField poly_field(const Chart& chart, int max_degree, int max_terms) {
    std::vector<RatFunc> c;
    for (std::size_t i = 0; i < chart.dim(); ++i) c.emplace_back(poly(chart.ring(), max_degree, max_terms));
    return VectorField(chart, std::move(c));
  }

 private:
  std::mt19937_64 engine_;
};

inline Chart chart_of_dim(std::size_t n, const char* prefix = "x") {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + 1));
  return Chart(std::move(names));
}

}  // namespace rank2::testing
