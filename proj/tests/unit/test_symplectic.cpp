#include "doctest.h"
#include "rank2/error.hpp"
#include "rank2/exact/parse.hpp"
#include "rank2/models/models.hpp"
#include "rank2/symplectic/symplectic.hpp"
#include "support/cone_oracle.hpp"
#include "support/oracles.hpp"
#include "support/random_objects.hpp"

using namespace rank2;
using rank2::testing::Gen;
using Dims = std::vector<std::size_t>;

namespace {

RatFunc expr(const Chart& c, const char* s) { return parse_expression(s, c.ring()); }

// Closed-form maximal-class trace on the cone: n-1, n, ..., 2n-4, 2n-4.
Dims maximal_trace(std::size_t n) {
  Dims t;
  for (std::size_t r = n - 1; r <= 2 * n - 4; ++r) t.push_back(r);
  t.push_back(2 * n - 4);
  return t;
}

// Gradient of f at lambda as a covector on T*M.
QVector gradient(const Chart& total, const RatFunc& f, const Point& lambda) {
  QVector g;
  for (const auto& name : total.coords()) g.push_back(diff(f, name).eval(lambda));
  return g;
}

Rational dot(const QVector& a, const QVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Tautological form s = sum p_i dx_i evaluated on a tangent vector.
Rational tautological(std::size_t n, const Point& lambda, const QVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i) s += lambda[n + i] * v[i];
  return s;
}

// H(lambda) = ker(dh1, dh2, dh3, s), computed from first principles.
std::vector<QVector> h_space(const ConeFlag& flag, const CovectorSample& s) {
  const std::size_t n = flag.distribution().dim();
  const Point lambda = s.lambda();
  QMatrix m(0, 2 * n);
  for (std::size_t i = 0; i < 3; ++i)
    m.append_row(gradient(flag.chart().total(), flag.characteristic().h[i], lambda));
  QVector taut(2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) taut[i] = lambda[n + i];
  m.append_row(taut);
  return rank_nullspace(m).nullspace;
}

}  // namespace

TEST_CASE("hamiltonian_of examples") {
  const Chart c({"x1", "x2"});
  const CotangentChart t(c);
  CHECK(t.total().coords() == std::vector<std::string>{"x1", "x2", "p_x1", "p_x2"});
  CHECK(hamiltonian_of(t, VectorField::coordinate(c, 0)) == expr(t.total(), "p_x1"));
  CHECK(hamiltonian_of(t, VectorField::zero(c)).is_zero());

  const Distribution m5 = monge_model(5);
  const CotangentChart tm(m5.chart());
  CHECK(hamiltonian_of(tm, m5[0]) == expr(tm.total(), "p_x + y1*p_y0 + y2*p_y1 + y2^2*p_z"));
  CHECK_THROWS_AS(hamiltonian_of(tm, VectorField::coordinate(c, 0)), ChartMismatch);
  CHECK_THROWS_AS(CotangentChart(Chart({"x", "p_x"})), Error);
}

TEST_CASE("poisson examples") {
  const Chart c({"x", "y"});
  const CotangentChart t(c);
  const Chart& tc = t.total();
  CHECK(poisson(t, expr(tc, "p_x"), expr(tc, "x")) == expr(tc, "1"));
  CHECK(poisson(t, expr(tc, "x"), expr(tc, "p_x")) == expr(tc, "-1"));
  const RatFunc hx = hamiltonian_of(t, VectorField::coordinate(c, 0));
  const RatFunc hxy = hamiltonian_of(t, VectorField(c, {expr(c, "0"), expr(c, "x")}));
  CHECK(poisson(t, hx, hxy) == expr(tc, "p_y"));
  const RatFunc h = expr(tc, "x*p_y^2 + y*p_x");
  CHECK(poisson(t, h, h).is_zero());
  const CotangentChart other(Chart({"u", "v"}));
  CHECK_THROWS_AS(poisson(t, hx, expr(other.total(), "p_u")), ChartMismatch);
}

TEST_CASE("property: Poisson-Lie compatibility on random fields") {
  Gen gen(2024);
  for (int trial = 0; trial < 50; ++trial) {
    const Chart c = rank2::testing::chart_of_dim(std::size_t(gen.integer(2, 4)));
    const CotangentChart t(c);
    const VectorField x = gen.poly_field(c, 2, 3), y = gen.poly_field(c, 2, 3);
    CHECK(poisson(t, hamiltonian_of(t, x), hamiltonian_of(t, y)) == hamiltonian_of(t, lie_bracket(x, y)));
  }
}

TEST_CASE("hamiltonian_field and omega conventions") {
  const Chart c({"x", "y"});
  const CotangentChart t(c);
  const RatFunc f = expr(t.total(), "x*p_y + y^2*p_x");
  const RatFunc g = expr(t.total(), "p_x*p_y - x*y");
  CHECK(hamiltonian_field(t, f).apply(g) == poisson(t, f, g));
  // omega(h->_f, h->_g) = {f, g} at a point.
  const Point lambda = {Rational(1), Rational(2), Rational(-1), Rational(3)};
  CHECK(omega(2, hamiltonian_field(t, f).eval(lambda), hamiltonian_field(t, g).eval(lambda)) ==
        poisson(t, f, g).eval(lambda));
}

TEST_CASE("char_field identities") {
  for (std::size_t n = 5; n <= 7; ++n) {
    const CharField cf = char_field(monge_model(n));
    const auto& h = cf.h;
    CHECK(cf.field.apply(h[0]) == h[3] * h[2]);
    CHECK(cf.field.apply(h[1]) == h[4] * h[2]);
    CHECK(cf.field.apply(h[2]).is_zero());
  }
  const Distribution free3 = flat_from_symbol(free_nilpotent_symbol(3));
  const CharField cf = char_field(free3);
  CHECK(cf.field.apply(cf.h[2]).is_zero());

  // At a covector with h4 = 1, h5 = 0 the field is -h2->.
  const Distribution m5 = monge_model(5);
  const Point q = m5.chart().origin();
  const Point p = {Rational(0), Rational(1), Rational(0), Rational(0), Rational(0)};
  const CovectorSample s = make_sample(m5, q, p);
  CHECK(s.h[3] == 1);
  CHECK(s.h[4] == 0);
  const CharField c5 = char_field(m5);
  const CotangentChart& t = c5.chart;
  QVector minus_h2 = hamiltonian_field(t, c5.h[1]).eval(s.lambda());
  for (auto& v : minus_h2) v = -v;
  CHECK(c5.field.eval(s.lambda()) == minus_h2);
  CHECK_THROWS_AS(char_field(Distribution(Chart({"x", "y", "z"}), {VectorField::coordinate(Chart({"x", "y", "z"}), 0)})),
                  PreconditionError);
}

TEST_CASE("fiber_sample examples") {
  const Distribution m5 = monge_model(5);
  const Point q = m5.chart().origin();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const CovectorSample s = fiber_sample(m5, q, seed);
    // Nullspace of the rows e_x, e_y2, -e_y1 is span{e_y0, e_z}.
    CHECK(s.p[0] == 0);
    CHECK(s.p[2] == 0);
    CHECK(s.p[3] == 0);
    CHECK(s.h[0] == 0);
    CHECK(s.h[1] == 0);
    CHECK(s.h[2] == 0);
    CHECK((s.h[3] != 0 || s.h[4] != 0));
    Point triple = s.p;
    for (auto& v : triple) v *= 3;
    const CovectorSample scaled = make_sample(m5, q, triple);
    CHECK(scaled.h[3] == 3 * s.h[3]);
  }
  CHECK(fiber_sample(m5, q, 4).p == fiber_sample(m5, q, 4).p);

  const Chart c({"x", "y", "z"});
  const Distribution involutive(c, {VectorField::coordinate(c, 0), VectorField::coordinate(c, 1)});
  CHECK_THROWS_AS(fiber_sample(involutive, c.origin(), 1), PreconditionError);
  const Distribution j4 = cartan_jet(4);
  CHECK_THROWS_AS(fiber_sample(j4, j4.chart().origin(), 1), PreconditionError);
  // A covector off the annihilator of D^2 is rejected.
  CHECK_THROWS_AS(make_sample(m5, q, Point{Rational(1), Rational(0), Rational(0), Rational(0), Rational(0)}),
                  PreconditionError);
  CHECK_THROWS_AS(make_sample(m5, q, Point(5, Rational(0))), PreconditionError);
}

TEST_CASE("cone generators") {
  const Distribution m6 = monge_model(6);
  ConeFlag flag(m6);
  const auto gens = flag.generators();
  CHECK(gens.size() == 5);
  for (const auto& s : fiber_samples(m6, m6.chart().origin(), 4, 11)) {
    const Point lambda = s.lambda();
    std::vector<QVector> values;
    for (const auto& g : gens) {
      values.push_back(g.eval(lambda));
      for (std::size_t i = 0; i < 3; ++i) CHECK(g.apply(flag.characteristic().h[i]).eval(lambda) == 0);
    }
    CHECK(rank2::testing::oracle_rank(values) == 5);
    // Base components of W1 are proportional to X1(q).
    const QVector w1 = flag.lifts()[0].eval(lambda);
    const QVector x1 = m6[0].eval(s.q);
    std::vector<QVector> pair = {QVector(w1.begin(), w1.begin() + 6), x1};
    CHECK(rank2::testing::oracle_rank(pair) == 1);
  }
}

TEST_CASE("class_at_sample examples") {
  const Distribution m5 = monge_model(5);
  for (const auto& s : fiber_samples(m5, m5.chart().origin(), 3, 5)) {
    const ClassSample c = class_at_sample(m5, s, 0);
    CHECK(c.nu == 2);
    CHECK(c.trace == Dims{4, 5, 6, 6});
  }
  const Distribution m7 = monge_model(7);
  const ClassSample c7 = class_at_sample(m7, fiber_sample(m7, m7.chart().origin(), 3), 0);
  CHECK(c7.nu == 4);
  CHECK(c7.trace.back() == 10);
  CHECK(c7.trace == maximal_trace(7));
  const Distribution j4 = cartan_jet(4);
  CHECK_THROWS_AS(class_at_point(j4, j4.chart().origin(), 3, 1), PreconditionError);
}

TEST_CASE("class_at_point examples") {
  const Distribution m6 = monge_model(6);
  const ClassReport r = class_at_point(m6, m6.chart().origin(), 5, 1);
  CHECK(r.m == 3);
  CHECK(r.maximal);
  CHECK(r.samples.size() == 5);
  CHECK(r.seed == 1);
  CHECK(r.convention == kConeConvention);

  const Distribution free4 = flat_from_symbol(free_nilpotent_symbol(4));
  const ClassReport f = class_at_point(free4, free4.chart().origin(), 5, 1);
  CHECK(free4.dim() == 8);
  CHECK(f.m == 5);
  CHECK(f.maximal);

  const Distribution free3 = flat_from_symbol(free_nilpotent_symbol(3));
  ConeFlag flag(free3);
  const Point other = {Rational(1), Rational(-2), make_rational(1, 3), Rational(2), Rational(-1)};
  CHECK(class_at_point(flag, free3.chart().origin(), 3, 2).m == class_at_point(flag, other, 3, 2).m);
}

TEST_CASE("property: cone traces agree with an independent construction") {
  std::vector<Distribution> models = {monge_model(5), monge_model(6), monge_model(7),
                                      flat_from_symbol(free_nilpotent_symbol(3))};
  for (const auto& d : models) {
    const rank2::testing::ConeOracle oracle(d);
    ConeFlag flag(d);
    for (const auto& s : fiber_samples(d, d.chart().origin(), 2, 21)) {
      const Dims expected = oracle.trace(s.lambda());
      CHECK(class_at_sample(flag, s, 0).trace == expected);
      CHECK(oracle.xc().eval(s.lambda()) == flag.characteristic().field.eval(s.lambda()));
    }
  }
}

TEST_CASE("property: class invariants over samples") {
  Gen gen(77);
  for (std::size_t n = 5; n <= 7; ++n) {
    const Distribution d = monge_model(n);
    ConeFlag flag(d);
    const Point q = sample_points_near(d, d.chart().origin(), 1, n).front();
    for (const auto& s : fiber_samples(d, q, 4, 100 + n)) {
      const ClassSample c = class_at_sample(flag, s, 0);
      // Jump property and the rank bound.
      for (std::size_t i = 1; i < c.trace.size(); ++i) CHECK(c.trace[i] - c.trace[i - 1] <= 1);
      CHECK(c.nu <= n - 3);
      CHECK(c.nu >= 2);
      // Persistence: two further rounds add nothing.
      const Dims r = flag.ranks(s, c.nu + 3);
      CHECK(r[c.nu + 1] == r[c.nu]);
      CHECK(r[c.nu + 3] == r[c.nu]);
      // Projective invariance.
      Rational k = gen.small_rational();
      while (k == 0) k = gen.small_rational();
      Point scaled = s.p;
      for (auto& v : scaled) v *= k;
      CHECK(class_at_sample(flag, make_sample(d, s.q, scaled), 0).nu == c.nu);
    }
  }
}

TEST_CASE("property: kernel consistency of the restricted symplectic form") {
  for (std::size_t n = 5; n <= 7; ++n) {
    const Distribution d = monge_model(n);
    ConeFlag flag(d);
    for (const auto& s : fiber_samples(d, d.chart().origin(), 3, 40 + n)) {
      const Point lambda = s.lambda();
      const auto h = h_space(flag, s);
      CHECK(h.size() == 2 * n - 4);
      const QVector xc = flag.characteristic().field.eval(lambda);
      CHECK(tautological(n, lambda, xc) == 0);
      for (const auto& v : h) CHECK(omega(n, xc, v) == 0);
      QMatrix gram(h.size(), h.size());
      for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) gram(i, j) = omega(n, h[i], h[j]);
      CHECK(h.size() - rank(gram) == 2);
      // X_C is tangent to the annihilator submanifold.
      for (std::size_t i = 0; i < 3; ++i)
        CHECK(dot(gradient(flag.chart().total(), flag.characteristic().h[i], lambda), xc) == 0);
    }
  }
}

TEST_CASE("pointwise_full_flag examples") {
  const Distribution m6 = monge_model(6);
  ConeFlag flag(m6);
  std::size_t maximal = 0;
  for (const auto& s : fiber_samples(m6, m6.chart().origin(), 6, 8)) {
    const FullFlag f = pointwise_full_flag(flag, s);
    // Non-generic covectors are reported, not rejected.
    if (class_at_sample(flag, s, 0).nu < 3) {
      CHECK_FALSE(f.generic);
      continue;
    }
    ++maximal;
    CHECK(f.nu == 3);
    Dims all(f.lower.rbegin(), f.lower.rend() - 1);
    all.insert(all.end(), f.upper.begin(), f.upper.end());
    CHECK(all == Dims{2, 3, 4, 5, 6, 7, 8});
    CHECK(f.h_dim == 8);
    CHECK(f.kernel_dim == 2);
    CHECK(f.kernel_contains_xc);
    CHECK(f.kernel_contains_euler);
    CHECK(f.j1_is_vertical_plus_xc);
    CHECK(f.dims_match);
    CHECK(f.generic);
    CHECK(f.vertical.front() == 3);
  }
  CHECK(maximal >= 3);
  for (std::size_t n : {5, 7}) {
    const Distribution d = monge_model(n);
    ConeFlag fl(d);
    const FullFlag f = pointwise_full_flag(fl, fiber_sample(d, d.chart().origin(), 2));
    CHECK(f.dims_match);
    CHECK(f.kernel_contains_xc);
  }
}

TEST_CASE("involutivity spot checks") {
  for (std::size_t n = 5; n <= 7; ++n) {
    const Distribution d = monge_model(n);
    ConeFlag flag(d);
    for (const auto& s : fiber_samples(d, d.chart().origin(), 2, 3)) {
      const InvolutivityCheck c = involutivity_check(flag, s);
      CHECK(c.vertical_closed);
      CHECK(c.j1_closed);
    }
  }
}

TEST_CASE("minimal class dichotomy on cube-5 inputs") {
  const std::vector<Distribution> models = {monge_model(5), monge_model(6),
                                            flat_from_symbol(free_nilpotent_symbol(3))};
  for (const auto& d : models) {
    CHECK(cube_dim(d, d.chart().origin()) == 5);
    CHECK(class_at_point(d, d.chart().origin(), 3, 9).m >= 2);
  }
}
