#include "doctest.h"
#include "rank2/error.hpp"
#include "rank2/exact/matrix.hpp"
#include "rank2/exact/parse.hpp"
#include "support/random_objects.hpp"

using namespace rank2;
using rank2::testing::Gen;

namespace {

RingPtr xyz() { return Ring::make({"x", "y", "z"}); }

RatFunc P(std::string_view s, const RingPtr& r) { return parse_expression(s, r); }

// Rank by an elimination order independent of rref(): pivots are taken from
// the last column backwards and the bottom-most nonzero row.
std::size_t rank_reverse_order(QMatrix m) {
  std::size_t rank = 0;
  std::vector<bool> used(m.rows(), false);
  for (std::size_t c = m.cols(); c-- > 0;) {
    std::size_t pivot = m.rows();
    for (std::size_t r = m.rows(); r-- > 0;) {
      if (!used[r] && sgn(m(r, c)) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == m.rows()) continue;
    used[pivot] = true;
    ++rank;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (used[r] || sgn(m(r, c)) == 0) continue;
      Rational f = m(r, c) / m(pivot, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) -= f * m(pivot, j);
    }
  }
  return rank;
}

}  // namespace

TEST_CASE("rational invariants") {
  Rational r = parse_rational("6/-4");
  CHECK(r.get_den() > 0);
  CHECK(r == make_rational(-3, 2));
  CHECK(to_string(make_rational(4, 6)) == "2/3");
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZero);
}

TEST_CASE("arith examples") {
  auto r = Ring::make({"x", "y"});
  CHECK(P("x/y", r) + (RatFunc(1L) - P("x/y", r)) == RatFunc(Poly(r, Rational(1))));
  CHECK(P("(x^2-1)/(x-1)", r) == P("x+1", r));
  CHECK((P("2/3", r) * P("3/2", r)).is_constant());
  CHECK((P("2/3", r) * P("3/2", r)).constant_value() == 1);
  CHECK_THROWS_AS(P("x", r) / RatFunc(Poly(r)), DivisionByZero);
}

TEST_CASE("normalization is canonical") {
  auto r = xyz();
  RatFunc a = P("(x*y - y^2)/(2*x^2 - 2*y^2)", r);
  RatFunc b = P("y/(2*x + 2*y)", r);
  CHECK(a == b);
  // Denominator leading coefficient is +1.
  CHECK(a.den().leading().coeff == 1);
  RatFunc c = P("(x+y+z)^3/((x+y+z)^2*(x-z))", r);
  CHECK(c == P("(x+y+z)/(x-z)", r));
}

TEST_CASE("gcd of multivariate polynomials") {
  auto r = xyz();
  Poly f = P("(x*y + z^2 - 1)*(x - y)", r).num();
  Poly g = P("(x*y + z^2 - 1)*(y + z + 3)", r).num();
  CHECK(gcd(f, g) == P("x*y + z^2 - 1", r).num().monic());
  CHECK(gcd(P("x^2*y", r).num(), P("x*y^3", r).num()) == P("x*y", r).num());
  CHECK(gcd(P("x+1", r).num(), P("y+1", r).num()).is_one());
}

TEST_CASE("diff examples") {
  auto r = xyz();
  CHECK(diff(P("x^2*y", r), "x") == P("2*x*y", r));
  CHECK(diff(P("1/x", r), "x") == P("-1/x^2", r));
  CHECK(diff(P("x^2*y", r), "z").is_zero());
  CHECK_THROWS_AS(diff(P("x", r), "w"), UnknownVariable);
}

TEST_CASE("eval examples") {
  auto r = Ring::make({"x", "y"});
  QVector p12{Rational(1), Rational(2)};
  CHECK(P("x/y", r).eval(p12) == make_rational(1, 2));
  QVector origin{Rational(0), Rational(0)};
  CHECK(P("x^2+y", r).eval(origin) == 0);
  QVector p01{Rational(0), Rational(1)};
  CHECK_THROWS_AS(P("1/x", r).eval(p01), PoleError);
}

TEST_CASE("rank_nullspace examples") {
  auto id = QMatrix::identity(3);
  auto rn = rank_nullspace(id);
  CHECK(rn.rank == 3);
  CHECK(rn.nullspace.empty());

  auto m = QMatrix::from_rows({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}});
  rn = rank_nullspace(m);
  CHECK(rn.rank == 1);
  REQUIRE(rn.nullspace.size() == 1);
  CHECK(in_span({QVector{Rational(2), Rational(-1)}}, rn.nullspace[0]));

  // Values at the origin of X1, X2, [X1,X2] for the five-dimensional Monge
  // frame in coordinates (x, y0, y1, y2, z): e_x, e_y2, -e_y1 - 2*y2*e_z.
  auto rows = QMatrix::from_rows({
      {Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)},
      {Rational(0), Rational(0), Rational(0), Rational(1), Rational(0)},
      {Rational(0), Rational(0), Rational(-1), Rational(0), Rational(0)},
  });
  CHECK(rank_nullspace(rows).rank == 3);
}

TEST_CASE("function-field nullspace") {
  auto r = xyz();
  FMatrix m = FMatrix::from_rows({{P("1", r), P("y", r), P("x^2", r)}, {P("0", r), P("1", r), P("1/x", r)}});
  auto rn = rank_nullspace(m);
  CHECK(rn.rank == 2);
  REQUIRE(rn.nullspace.size() == 1);
  for (std::size_t i = 0; i < 2; ++i) {
    RatFunc acc{Poly(r)};
    for (std::size_t j = 0; j < 3; ++j) acc += m(i, j) * rn.nullspace[0][j];
    CHECK(acc.is_zero());
  }
  for (const auto& e : rn.nullspace[0]) CHECK(e.is_polynomial());

  FVector b{P("x", r), P("y", r)};
  FVector sol = solve(m, b);
  for (std::size_t i = 0; i < 2; ++i) {
    RatFunc acc{Poly(r)};
    for (std::size_t j = 0; j < 3; ++j) acc += m(i, j) * sol[j];
    CHECK(acc == b[i]);
  }
}

TEST_CASE("property: field axioms on random rational functions") {
  Gen gen(20240611);
  auto r = xyz();
  for (int trial = 0; trial < 25; ++trial) {
    RatFunc a = gen.ratfunc(r, 2, 3), b = gen.ratfunc(r, 2, 3), c = gen.ratfunc(r, 2, 3);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("property: mixed partials commute") {
  Gen gen(77);
  auto r = xyz();
  for (int trial = 0; trial < 30; ++trial) {
    RatFunc f(gen.poly(r, 5, 6));
    CHECK(f.diff(0).diff(1) == f.diff(1).diff(0));
    CHECK(f.diff(1).diff(2) == f.diff(2).diff(1));
  }
}

TEST_CASE("property: rank agrees with an independent elimination order") {
  Gen gen(9001);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t rows = std::size_t(gen.integer(1, 6)), cols = std::size_t(gen.integer(1, 6));
    QMatrix m(rows, cols);
    // Low-rank matrices show up often through duplicated rows.
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(gen.integer(-2, 2));
    if (rows > 1 && gen.integer(0, 1) == 1)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = m(0, j) * 3;
    auto rn = rank_nullspace(m);
    CHECK(rn.rank == rank_reverse_order(m));
    CHECK(rn.rank + rn.nullspace.size() == cols);
    for (const auto& v : rn.nullspace) {
      for (std::size_t i = 0; i < rows; ++i) {
        Rational acc(0);
        for (std::size_t j = 0; j < cols; ++j) acc += m(i, j) * v[j];
        CHECK(acc == 0);
      }
    }
  }
}

TEST_CASE("inverse and determinant") {
  auto a = QMatrix::from_rows({{Rational(2), Rational(1)}, {Rational(1), Rational(1)}});
  CHECK(determinant(a) == 1);
  CHECK(a * inverse(a) == QMatrix::identity(2));
  auto s = QMatrix::from_rows({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}});
  CHECK_THROWS_AS(inverse(s), SingularMatrix);
}

TEST_CASE("parser") {
  auto r = Ring::make({"x", "y_1"});
  CHECK(P("-x^2", r) == RatFunc(-Poly::variable(r, 0).pow(2)));
  CHECK(P("2*x - 3/4*y_1", r) == P("(8*x - 3*y_1)/4", r));
  CHECK(P("((x))", r) == P("x", r));
  CHECK(P("x^0", r) == P("1", r));
  try {
    parse_expression("x + * y_1", r);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_expression("x^-1", r), ParseError);
  CHECK_THROWS_AS(parse_expression("w + 1", r), ParseError);
  CHECK_THROWS_AS(parse_expression("(x + 1", r), ParseError);
  CHECK_THROWS_AS(parse_expression("1/(x-x)", r), ParseError);
  CHECK_THROWS_AS(parse_expression("", r), ParseError);
}
