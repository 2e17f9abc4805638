#include "doctest.h"
#include "rank2/error.hpp"
#include "rank2/exact/parse.hpp"
#include "rank2/geometry/fields.hpp"
#include "support/random_objects.hpp"

using namespace rank2;
using rank2::testing::Gen;

namespace {

VectorField field(const Chart& c, std::initializer_list<const char*> comps) {
  std::vector<RatFunc> v;
  for (const char* s : comps) v.push_back(parse_expression(s, c.ring()));
  return VectorField(c, std::move(v));
}

OneForm form(const Chart& c, std::initializer_list<const char*> comps) {
  std::vector<RatFunc> v;
  for (const char* s : comps) v.push_back(parse_expression(s, c.ring()));
  return OneForm(c, std::move(v));
}

Chart monge5() { return Chart({"x", "y0", "y1", "y2", "z"}); }

}  // namespace

TEST_CASE("lie_bracket examples") {
  Chart c({"x", "y"});
  CHECK(lie_bracket(field(c, {"1", "0"}), field(c, {"0", "x"})) == field(c, {"0", "1"}));
  auto x = field(c, {"x*y", "y^2 - x"});
  CHECK(lie_bracket(x, x).is_zero());

  Chart m = monge5();
  auto x1 = field(m, {"1", "y1", "y2", "0", "y2^2"});
  auto x2 = field(m, {"0", "0", "0", "1", "0"});
  CHECK(lie_bracket(x1, x2) == field(m, {"0", "0", "-1", "0", "-2*y2"}));

  Chart other({"u", "v"});
  CHECK_THROWS_AS(lie_bracket(field(c, {"1", "0"}), field(other, {"1", "0"})), ChartMismatch);
}

TEST_CASE("pair examples") {
  Chart c({"x", "y"});
  CHECK(pair(OneForm::coordinate(c, 0), VectorField::coordinate(c, 0)) == RatFunc(Poly(c.ring(), Rational(1))));
  Chart m = monge5();
  auto x1 = field(m, {"1", "y1", "y2", "0", "y2^2"});
  CHECK(pair(form(m, {"-y1", "1", "0", "0", "0"}), x1).is_zero());
  CHECK(pair(form(m, {"-y2^2", "0", "0", "0", "1"}), VectorField::coordinate(m, 0)) ==
        parse_expression("-y2^2", m.ring()));
}

TEST_CASE("linear_change examples") {
  Chart c({"x", "y", "z"});
  auto x = field(c, {"y", "x*z", "1"});
  CHECK(linear_change(x, QMatrix::identity(3)) == x);
  QMatrix d = QMatrix::identity(3);
  d(0, 0) = 2;
  CHECK(linear_change(VectorField::coordinate(c, 0), d) == field(c, {"2", "0", "0"}));
  // x-component picks up the factor 2 and x is replaced by x/2 in the arguments.
  CHECK(linear_change(field(c, {"0", "x", "0"}), d) == field(c, {"0", "x/2", "0"}));
  QMatrix singular(3, 3);
  CHECK_THROWS_AS(linear_change(x, singular), SingularMatrix);
}

TEST_CASE("property: Jacobi identity on random polynomial fields") {
  Gen gen(31337);
  for (int trial = 0; trial < 8; ++trial) {
    std::size_t n = std::size_t(gen.integer(2, 6));
    Chart c = rank2::testing::chart_of_dim(n);
    auto x = gen.poly_field(c, 2, 3), y = gen.poly_field(c, 2, 3), z = gen.poly_field(c, 2, 3);
    auto j = lie_bracket(lie_bracket(x, y), z) + lie_bracket(lie_bracket(y, z), x) +
             lie_bracket(lie_bracket(z, x), y);
    CHECK(j.is_zero());
  }
}

TEST_CASE("property: Leibniz rule") {
  Gen gen(4242);
  for (int trial = 0; trial < 10; ++trial) {
    Chart c = rank2::testing::chart_of_dim(4);
    auto x = gen.poly_field(c, 2, 3), y = gen.poly_field(c, 2, 3);
    RatFunc f(gen.poly(c.ring(), 3, 4));
    CHECK(lie_bracket(x, f * y) == x.apply(f) * y + f * lie_bracket(x, y));
  }
}

TEST_CASE("property: linear changes are natural for brackets") {
  Gen gen(555);
  for (int trial = 0; trial < 8; ++trial) {
    Chart c = rank2::testing::chart_of_dim(3);
    QMatrix a(3, 3);
    do {
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) a(i, j) = Rational(gen.integer(-2, 2));
    } while (determinant(a) == 0);
    auto x = gen.poly_field(c, 2, 3), y = gen.poly_field(c, 2, 3);
    CHECK(linear_change(lie_bracket(x, y), a) == lie_bracket(linear_change(x, a), linear_change(y, a)));
  }
}
