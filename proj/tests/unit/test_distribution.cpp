#include "doctest.h"
#include "rank2/distribution/symbol.hpp"
#include "rank2/error.hpp"
#include "rank2/exact/parse.hpp"
#include "rank2/models/models.hpp"
#include "support/oracles.hpp"
#include "support/random_objects.hpp"

using namespace rank2;
using rank2::testing::Gen;
using Dims = std::vector<std::size_t>;

namespace {

VectorField field(const Chart& c, std::initializer_list<const char*> comps) {
  std::vector<RatFunc> v;
  for (const char* s : comps) v.push_back(parse_expression(s, c.ring()));
  return VectorField(c, std::move(v));
}

Point origin(const Distribution& d) { return d.chart().origin(); }

}  // namespace

TEST_CASE("weak_flag examples match the all-bracketings oracle") {
  const Distribution monge6 = monge_model(6);
  CHECK(weak_flag(monge6, origin(monge6), 10).dims == Dims{2, 3, 5, 6});
  CHECK(testing::oracle_growth(monge6.frame(), origin(monge6), 4) == Dims{2, 3, 5, 6});

  const Distribution j3 = cartan_jet(3);
  CHECK(weak_flag(j3, origin(j3), 10).dims == Dims{2, 3, 4, 5});
  CHECK(testing::oracle_growth(j3.frame(), origin(j3), 4) == Dims{2, 3, 4, 5});

  const Distribution flat4 = flat_from_symbol(free_nilpotent_symbol(4));
  const FlagReport f = weak_flag(flat4, origin(flat4), 10);
  CHECK(f.dims == Dims{2, 3, 5, 8});
  CHECK(f.stabilized);
  CHECK(testing::oracle_growth(flat4.frame(), origin(flat4), 4) == Dims{2, 3, 5, 8});
}

TEST_CASE("weak_flag errors") {
  Chart c({"x", "y"});
  Distribution dependent(c, {field(c, {"1", "0"}), field(c, {"x", "0"})});
  CHECK_THROWS_AS(weak_flag(dependent, c.origin(), 3), PreconditionError);
  Distribution pole(c, {field(c, {"1/x", "0"}), field(c, {"0", "1"})});
  CHECK_THROWS_AS(weak_flag(pole, c.origin(), 3), PoleError);
}

TEST_CASE("strong_flag examples match the oracle") {
  const Distribution j4 = cartan_jet(4);
  CHECK(strong_flag(j4, origin(j4), 10).dims == Dims{2, 3, 4, 5, 6});
  CHECK(testing::oracle_strong_growth(j4.frame(), origin(j4), 5) == Dims{2, 3, 4, 5, 6});
  const Distribution m5 = monge_model(5);
  CHECK(strong_flag(m5, origin(m5), 10).dims == Dims{2, 3, 5});
  const Distribution engel = cartan_jet(2);
  CHECK(strong_flag(engel, origin(engel), 10).dims == Dims{2, 3, 4});
  CHECK(testing::oracle_strong_growth(engel.frame(), origin(engel), 3) == Dims{2, 3, 4});
}

TEST_CASE("is_goursat examples") {
  for (std::size_t k = 2; k <= 5; ++k) CHECK(is_goursat(cartan_jet(k), origin(cartan_jet(k))));
  for (std::size_t n = 5; n <= 7; ++n) CHECK_FALSE(is_goursat(monge_model(n), origin(monge_model(n))));
}

TEST_CASE("cube_dim examples") {
  CHECK(cube_dim(monge_model(7), origin(monge_model(7))) == 5);
  CHECK(cube_dim(cartan_jet(5), origin(cartan_jet(5))) == 4);
  Chart c({"x", "y", "z"});
  Distribution flat(c, {VectorField::coordinate(c, 0), VectorField::coordinate(c, 1)});
  CHECK(cube_dim(flat, c.origin()) == 2);
}

TEST_CASE("equiregular_check examples") {
  CHECK(equiregular_check(monge_model(6), origin(monge_model(6)), 5).equiregular);
  const Distribution flat = flat_from_symbol(free_nilpotent_symbol(3));
  CHECK(equiregular_check(flat, origin(flat), 3).equiregular);

  // {dx, dy + x dz + x y dw}: the oracle finds (2,3,4) both on and off {x = 0}.
  Chart c({"x", "y", "z", "w"});
  Distribution d(c, {field(c, {"1", "0", "0", "0"}), field(c, {"0", "1", "x", "x*y"})});
  Point on{Rational(0), Rational(0), Rational(0), Rational(0)};
  Point off{Rational(1), Rational(0), Rational(0), Rational(0)};
  const Dims at_on = testing::oracle_growth(d.frame(), on, 3);
  const Dims at_off = testing::oracle_growth(d.frame(), off, 3);
  CHECK(equiregular_check(d, on, 5).equiregular == (at_on == at_off));

  // {dx, dy + x^2 dz}: growth (2,2,3) on {x = 0} versus (2,3) elsewhere.
  Chart c3({"x", "y", "z"});
  Distribution jumpy(c3, {field(c3, {"1", "0", "0"}), field(c3, {"0", "1", "x^2"})});
  CHECK(testing::oracle_growth(jumpy.frame(), c3.origin(), 3) == Dims{2, 2, 3});
  const EquiregularVerdict v = equiregular_check(jumpy, c3.origin(), 5);
  CHECK_FALSE(v.equiregular);
  CHECK(v.growth.front() == Dims{2, 2, 3});
}

TEST_CASE("property: weak flag is invariant under rational frame change") {
  Gen gen(7001);
  const Distribution m6 = monge_model(6);
  const Chart& c = m6.chart();
  const Point q = origin(m6);
  for (int trial = 0; trial < 6; ++trial) {
    RatFunc a = gen.ratfunc(c.ring(), 1, 2), b = gen.ratfunc(c.ring(), 1, 2);
    RatFunc e = gen.ratfunc(c.ring(), 1, 2), f = gen.ratfunc(c.ring(), 1, 2);
    const RatFunc det = a * f - b * e;
    if (a.has_pole_at(q) || b.has_pole_at(q) || e.has_pole_at(q) || f.has_pole_at(q)) continue;
    if (det.is_zero() || det.has_pole_at(q) || det.eval(q) == 0) continue;
    Distribution changed(c, {a * m6[0] + b * m6[1], e * m6[0] + f * m6[1]});
    CHECK(weak_flag(changed, q, 6).dims == Dims{2, 3, 5, 6});
  }
}

TEST_CASE("property: flags are invariant under unimodular linear changes") {
  Gen gen(7002);
  const Distribution m5 = monge_model(5);
  const Chart& c = m5.chart();
  for (int trial = 0; trial < 5; ++trial) {
    // Product of elementary integer matrices.
    QMatrix a = QMatrix::identity(5);
    for (int k = 0; k < 4; ++k) {
      QMatrix e = QMatrix::identity(5);
      auto i = std::size_t(gen.integer(0, 4)), j = std::size_t(gen.integer(0, 4));
      if (i == j) continue;
      e(i, j) = gen.integer(-2, 2);
      a = e * a;
    }
    CHECK(determinant(a) == 1);
    Distribution moved(c, {linear_change(m5[0], a), linear_change(m5[1], a)});
    // The image of the origin under a linear map is the origin.
    CHECK(weak_flag(moved, c.origin(), 6).dims == Dims{2, 3, 5});
    CHECK(strong_flag(moved, c.origin(), 6).dims == Dims{2, 3, 5});
  }
}

TEST_CASE("property: the strong flag contains the weak flag") {
  Gen gen(7003);
  const std::vector<Distribution> models{monge_model(5), monge_model(6), cartan_jet(3), cartan_jet(4),
                                         prolong(monge_model(5))};
  for (const auto& d : models) {
    for (const auto& q : sample_points_near(d, d.chart().origin(), 3, std::uint64_t(gen.integer(1, 1000)))) {
      const Dims w = weak_flag(d, q, d.dim()).dims;
      const Dims s = strong_flag(d, q, d.dim()).dims;
      for (std::size_t i = 0; i < std::min(w.size(), s.size()); ++i) CHECK(w[i] <= s[i]);
    }
  }
}

TEST_CASE("FlagReport invariants") {
  const FlagReport f = weak_flag(monge_model(7), origin(monge_model(7)), 10);
  CHECK(f.dims.front() == 2);
  for (std::size_t i = 1; i < f.dims.size(); ++i) CHECK(f.dims[i] >= f.dims[i - 1]);
  CHECK(f.generators.size() == f.dims.size());
}

TEST_CASE("tanaka_symbol examples") {
  const Distribution m5 = monge_model(5);
  const GradedSymbol s5 = tanaka_symbol(m5, origin(m5));
  CHECK(s5.dims() == Dims{2, 1, 2});
  CHECK_FALSE(symbol_violation(s5));
  CHECK(s5 == canonicalize(free_nilpotent_symbol(3)));

  const Distribution engel = cartan_jet(2);
  const GradedSymbol se = tanaka_symbol(engel, origin(engel));
  CHECK(se.dims() == Dims{2, 1, 1});
  // [g_-1, g_-2] is one-dimensional.
  CHECK(testing::oracle_rank({se.bracket(0, 2), se.bracket(1, 2)}) == 1);

  Chart c({"x", "y", "z"});
  Distribution abelian(c, {VectorField::coordinate(c, 0), VectorField::coordinate(c, 1)});
  CHECK_THROWS_AS(tanaka_symbol(abelian, c.origin()), PreconditionError);
}

TEST_CASE("tanaka_symbol rejects non-equiregular points") {
  Chart c({"x", "y", "z"});
  Distribution jumpy(c, {field(c, {"1", "0", "0"}), field(c, {"0", "1", "x^2"})});
  CHECK_THROWS_AS(tanaka_symbol(jumpy, c.origin()), PreconditionError);
}

TEST_CASE("property: Tanaka symbols satisfy the graded Lie algebra axioms") {
  const std::vector<Distribution> models{monge_model(5), monge_model(6), monge_model(7), cartan_jet(3),
                                         cartan_jet(5), flat_from_symbol(free_nilpotent_symbol(4))};
  for (const auto& d : models) {
    const GradedSymbol s = tanaka_symbol(d, origin(d));
    CHECK_FALSE(symbol_violation(s));
    CHECK(canonicalize(s) == s);
    std::size_t total = 0;
    for (auto k : s.dims()) total += k;
    CHECK(total == d.dim());
  }
}

TEST_CASE("symbol_violation detects broken tables") {
  GradedSymbol m = free_nilpotent_symbol(3);
  CHECK_FALSE(symbol_violation(m));
  GradedSymbol antisym = m;
  antisym.brackets[0][1][2] += 1;
  CHECK(symbol_violation(antisym));
  GradedSymbol graded = m;
  graded.brackets[0][1][3] = 1;
  graded.brackets[1][0][3] = -1;
  CHECK(symbol_violation(graded));
  GradedSymbol abelian = m;
  for (auto& row : abelian.brackets)
    for (auto& v : row)
      for (auto& x : v) x = 0;
  CHECK(symbol_violation(abelian));
}
