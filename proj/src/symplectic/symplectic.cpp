#include "rank2/symplectic/symplectic.hpp"

#include <random>

#include "../distribution/flag_words.hpp"
#include "rank2/error.hpp"

namespace rank2 {

const char* const kConeConvention =
    "cone convention: flags are computed on T*M, not its projectivization; every J-flag, H and "
    "kernel dimension carries +1 for the Euler direction, nu is unchanged. m(q) is a maximum over "
    "seeded random fiber samples (Zariski-generic, not certified).";

// ------------------------------------------------------------ cotangent chart

CotangentChart::CotangentChart(Chart base) : base_(std::move(base)) {
  std::vector<std::string> names = base_.coords();
  for (const auto& c : base_.coords()) {
    std::string p = "p_" + c;
    if (base_.ring()->index_of(p)) throw Error("momentum name '" + p + "' collides with a base coordinate");
    names.push_back(p);
  }
  total_ = Chart(std::move(names));
}

RatFunc CotangentChart::lift(const RatFunc& f) const {
  std::vector<std::size_t> map(n());
  for (std::size_t i = 0; i < n(); ++i) map[i] = i;
  return f.remap(total_.ring(), map);
}

VectorField CotangentChart::vertical(const OneForm& w) const {
  std::vector<RatFunc> comps(2 * n(), RatFunc(Poly(total_.ring())));
  for (std::size_t i = 0; i < n(); ++i) comps[momentum(i)] = lift(w[i]);
  return VectorField(total_, std::move(comps));
}

VectorField CotangentChart::euler() const {
  std::vector<RatFunc> comps(2 * n(), RatFunc(Poly(total_.ring())));
  for (std::size_t i = 0; i < n(); ++i) comps[momentum(i)] = RatFunc::variable(total_.ring(), momentum(i));
  return VectorField(total_, std::move(comps));
}

RatFunc hamiltonian_of(const CotangentChart& t, const VectorField& x) {
  if (!(x.chart() == t.base())) throw ChartMismatch("field does not live on the base chart");
  RatFunc h{Poly(t.total().ring())};
  for (std::size_t i = 0; i < t.n(); ++i) {
    if (x[i].is_zero()) continue;
    h += RatFunc::variable(t.total().ring(), t.momentum(i)) * t.lift(x[i]);
  }
  return h;
}

RatFunc poisson(const CotangentChart& t, const RatFunc& f, const RatFunc& g) {
  if (!compatible(f.ring(), t.total().ring()) || !compatible(g.ring(), t.total().ring())) {
    throw ChartMismatch("Hamiltonians live on different cotangent charts");
  }
  RatFunc out{Poly(t.total().ring())};
  for (std::size_t i = 0; i < t.n(); ++i) {
    const std::size_t pi = t.momentum(i);
    RatFunc fp = f.diff(pi), gx = g.diff(i);
    if (!fp.is_zero() && !gx.is_zero()) out += fp * gx;
    RatFunc fx = f.diff(i), gp = g.diff(pi);
    if (!fx.is_zero() && !gp.is_zero()) out -= fx * gp;
  }
  return out;
}

VectorField hamiltonian_field(const CotangentChart& t, const RatFunc& h) {
  std::vector<RatFunc> comps(2 * t.n());
  for (std::size_t i = 0; i < t.n(); ++i) {
    comps[i] = h.diff(t.momentum(i));
    comps[t.momentum(i)] = -h.diff(i);
  }
  return VectorField(t.total(), std::move(comps));
}

Rational omega(std::size_t n, const QVector& u, const QVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i) s += u[n + i] * v[i] - u[i] * v[n + i];
  return s;
}

CharField char_field(const Distribution& d) {
  if (d.rank() != 2) throw PreconditionError("the characteristic field needs a rank-2 distribution");
  CharField out;
  out.chart = CotangentChart(d.chart());
  const VectorField x3 = lie_bracket(d[0], d[1]);
  const VectorField x4 = lie_bracket(d[0], x3);
  const VectorField x5 = lie_bracket(d[1], x3);
  const std::array<const VectorField*, 5> xs{&d[0], &d[1], &x3, &x4, &x5};
  for (std::size_t k = 0; k < 5; ++k) out.h[k] = hamiltonian_of(out.chart, *xs[k]);
  out.field = out.h[4] * hamiltonian_field(out.chart, out.h[0]) - out.h[3] * hamiltonian_field(out.chart, out.h[1]);
  return out;
}

// ------------------------------------------------------------ samples

Point CovectorSample::lambda() const {
  Point l = q;
  l.insert(l.end(), p.begin(), p.end());
  return l;
}

namespace {

std::array<Rational, 5> h_values(const Distribution& d, std::span<const Rational> q, std::span<const Rational> p) {
  const VectorField x3 = lie_bracket(d[0], d[1]);
  const std::array<VectorField, 5> xs{d[0], d[1], x3, lie_bracket(d[0], x3), lie_bracket(d[1], x3)};
  std::array<Rational, 5> h;
  for (std::size_t k = 0; k < 5; ++k) {
    QVector v = xs[k].eval(q);
    h[k] = 0;
    for (std::size_t i = 0; i < v.size(); ++i) h[k] += p[i] * v[i];
  }
  return h;
}

void require_cube_five(const Distribution& d, std::span<const Rational> q) {
  if (d.rank() != 2) throw PreconditionError("class computations need a rank-2 distribution");
  std::size_t cube = cube_dim(d, q);
  if (cube != 5) {
    throw PreconditionError("dim D^3 = " + std::to_string(cube) + " at " + to_string(q) +
                            "; the characteristic construction needs 5");
  }
}

}  // namespace

CovectorSample make_sample(const Distribution& d, std::span<const Rational> q, std::span<const Rational> p) {
  d.chart().check_point(q);
  if (p.size() != d.dim()) throw Error("momentum has the wrong number of coordinates");
  CovectorSample s{Point(q.begin(), q.end()), Point(p.begin(), p.end()), h_values(d, q, p)};
  if (sgn(s.h[0]) != 0 || sgn(s.h[1]) != 0 || sgn(s.h[2]) != 0) {
    throw PreconditionError("covector does not annihilate D^2 at the base point");
  }
  if (sgn(s.h[3]) == 0 && sgn(s.h[4]) == 0) throw PreconditionError("covector annihilates D^3");
  return s;
}

std::vector<CovectorSample> fiber_samples(const Distribution& d, std::span<const Rational> q, std::size_t count,
                                          std::uint64_t seed) {
  require_cube_five(d, q);
  const std::vector<VectorField> sq = square_frame(d);
  QMatrix rows(3, d.dim());
  for (std::size_t k = 0; k < 3; ++k) {
    QVector v = sq[k].eval(q);
    for (std::size_t j = 0; j < d.dim(); ++j) rows(k, j) = v[j];
  }
  RankNullspace<Rational> rn = rank_nullspace(rows);
  if (rn.rank != 3) throw PreconditionError("D^2 is not 3-dimensional at " + to_string(q));
  std::mt19937_64 rng(seed);
  std::vector<CovectorSample> out;
  const std::size_t budget = 100 * (count + 1);
  for (std::size_t attempt = 0; attempt < budget && out.size() < count; ++attempt) {
    QVector p(d.dim(), Rational(0));
    for (const auto& basis : rn.nullspace) {
      // Nonzero coefficients keep samples off the coordinate hyperplanes of
      // the fiber, where non-generic covectors concentrate.
      const long num = long(rng() % 18) - 9;
      Rational c = make_rational(num >= 0 ? num + 1 : num, long(rng() % 4) + 1);
      for (std::size_t j = 0; j < p.size(); ++j) p[j] += c * basis[j];
    }
    std::array<Rational, 5> h = h_values(d, q, p);
    if (sgn(h[3]) == 0 && sgn(h[4]) == 0) continue;
    out.push_back(CovectorSample{Point(q.begin(), q.end()), std::move(p), h});
  }
  if (out.size() < count) throw PreconditionError("fiber sampling budget exhausted");
  return out;
}

CovectorSample fiber_sample(const Distribution& d, std::span<const Rational> q, std::uint64_t seed) {
  return fiber_samples(d, q, 1, seed).front();
}

// ------------------------------------------------------------ cone flag

ConeFlag::ConeFlag(const Distribution& d) : d_(d), xc_(char_field(d)) {
  const CotangentChart& t = xc_.chart;
  const std::vector<VectorField> sq = square_frame(d);
  for (const auto& eta : annihilator_basis(d.chart(), sq)) vertical_.push_back(t.vertical(eta));
  // xi with <xi, X1> = <xi, X2> = 0, <xi, X3> = 1; scaled to polynomial data.
  FMatrix m(3, d.dim());
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t j = 0; j < d.dim(); ++j) m(k, j) = sq[k][j];
  FVector xi;
  try {
    xi = solve(m, FVector{RatFunc(0L), RatFunc(0L), RatFunc(1L)});
  } catch (const SingularMatrix&) {
    throw PreconditionError("D^2 does not have generic rank 3");
  }
  Poly den(Rational(1));
  for (const auto& e : xi) {
    if (e.den().is_constant()) continue;
    den = divide_exact(den * e.den(), gcd(den, e.den()));
  }
  lift_scale_ = RatFunc(den);
  std::vector<RatFunc> xi_num;
  for (const auto& e : xi) xi_num.push_back(e * lift_scale_);
  const VectorField xi_field = t.vertical(OneForm(d.chart(), xi_num));
  const RatFunc scale = t.lift(lift_scale_);
  lifts_.push_back(scale * hamiltonian_field(t, xc_.h[0]) - xc_.h[3] * xi_field);
  lifts_.push_back(scale * hamiltonian_field(t, xc_.h[1]) - xc_.h[4] * xi_field);
  pruner_ = std::make_unique<detail::FieldPruner>(true);
  std::vector<VectorField> gens = generators();
  for (const auto& g : gens) pruner_->add(g);
  layers_.push_back(std::move(gens));
}

ConeFlag::~ConeFlag() = default;
ConeFlag::ConeFlag(ConeFlag&&) noexcept = default;

std::vector<VectorField> ConeFlag::generators() const {
  std::vector<VectorField> g = vertical_;
  g.insert(g.end(), lifts_.begin(), lifts_.end());
  return g;
}

const std::vector<VectorField>& ConeFlag::layer(std::size_t k) {
  while (layers_.size() <= k) {
    std::vector<VectorField> next;
    for (const auto& f : layers_.back()) {
      VectorField b = lie_bracket(xc_.field, f);
      if (pruner_->add(b)) next.push_back(std::move(b));
    }
    layers_.push_back(std::move(next));
  }
  return layers_[k];
}

void ConeFlag::check_sample(const CovectorSample& s) const {
  if (lift_scale_.eval(s.q) == 0) {
    throw PreconditionError("lift normalization vanishes at " + to_string(s.q) + "; resample");
  }
  const Point l = s.lambda();
  QSpan span(l.size());
  for (const auto& v : vertical_) span.add(v.eval(l));
  if (span.rank() != vertical_.size()) {
    throw PreconditionError("annihilator basis of D^2 degenerates at " + to_string(s.q) + "; resample");
  }
  for (const auto& w : lifts_) span.add(w.eval(l));
  if (span.rank() != vertical_.size() + 2) throw PreconditionError("cone generators are dependent at the sample");
  bool zero = true;
  for (const auto& v : xc_.field.eval(l)) zero = zero && sgn(v) == 0;
  if (zero) throw PreconditionError("characteristic field vanishes at the sample");
}

std::vector<std::size_t> ConeFlag::ranks(const CovectorSample& s, std::size_t rounds) {
  const Point l = s.lambda();
  QSpan span(l.size());
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= rounds; ++k) {
    for (const auto& f : layer(k)) span.add(f.eval(l));
    out.push_back(span.rank());
  }
  return out;
}

std::vector<QVector> ConeFlag::span_values(const CovectorSample& s, std::size_t k) {
  const Point l = s.lambda();
  std::vector<QVector> out;
  for (std::size_t j = 0; j <= k; ++j)
    for (const auto& f : layer(j)) out.push_back(f.eval(l));
  return out;
}

// ------------------------------------------------------------ class

ClassSample class_at_sample(ConeFlag& flag, const CovectorSample& s, std::size_t depth_cap) {
  const std::size_t n = flag.distribution().dim();
  if (depth_cap == 0) depth_cap = n;
  flag.check_sample(s);
  const Point l = s.lambda();
  QSpan span(2 * n);
  ClassSample out;
  out.sample = s;
  for (std::size_t k = 0;; ++k) {
    if (k > depth_cap) throw Error("cone flag did not stabilize within the depth cap");
    for (const auto& f : flag.layer(k)) span.add(f.eval(l));
    out.trace.push_back(span.rank());
    if (k > 0) {
      const std::size_t step = out.trace[k] - out.trace[k - 1];
      if (step > 1) throw Error("cone flag rank jumped by more than one");
      if (step == 0) {
        out.nu = k - 1;
        break;
      }
    }
  }
  if (out.trace.front() != n - 1) throw Error("cone over J does not have dimension n-1");
  if (out.nu > n - 3) throw Error("class exceeds n-3");
  return out;
}

ClassSample class_at_sample(const Distribution& d, const CovectorSample& s, std::size_t depth_cap) {
  ConeFlag flag(d);
  return class_at_sample(flag, s, depth_cap);
}

ClassReport class_at_point(ConeFlag& flag, std::span<const Rational> q, std::size_t samples, std::uint64_t seed,
                           std::size_t depth_cap) {
  const Distribution& d = flag.distribution();
  ClassReport out;
  out.seed = seed;
  out.convention = kConeConvention;
  for (const auto& s : fiber_samples(d, q, samples, seed)) {
    out.samples.push_back(class_at_sample(flag, s, depth_cap));
    out.m = std::max(out.m, out.samples.back().nu);
  }
  for (auto& s : out.samples) s.generic = s.nu == out.m;
  out.maximal = out.m == d.dim() - 3;
  return out;
}

ClassReport class_at_point(const Distribution& d, std::span<const Rational> q, std::size_t samples,
                           std::uint64_t seed, std::size_t depth_cap) {
  require_cube_five(d, q);
  ConeFlag flag(d);
  return class_at_point(flag, q, samples, seed, depth_cap);
}

// ------------------------------------------------------------ full flag

namespace {

// Basis of the subspace {sum c_a basis[a] : M c = 0} where M has one row per functional.
std::vector<QVector> combine(const std::vector<QVector>& basis, const RankNullspace<Rational>& rn) {
  std::vector<QVector> out;
  for (const auto& c : rn.nullspace) {
    QVector v(basis.front().size(), Rational(0));
    for (std::size_t a = 0; a < basis.size(); ++a) {
      if (sgn(c[a]) == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[a] * basis[a][j];
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Skew complement of `w` inside the subspace spanned by `h` (a basis).
std::vector<QVector> skew_complement(std::size_t n, const std::vector<QVector>& h, const std::vector<QVector>& w) {
  QMatrix m(w.size(), h.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t a = 0; a < h.size(); ++a) m(i, a) = omega(n, h[a], w[i]);
  if (w.empty()) return h;
  return combine(h, rank_nullspace(m));
}

std::size_t vertical_part_dim(std::size_t n, const std::vector<QVector>& basis) {
  if (basis.empty()) return 0;
  QMatrix m(n, basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t i = 0; i < n; ++i) m(i, a) = basis[a][i];
  return basis.size() - rank(m);
}

std::size_t span_rank(const std::vector<QVector>& vs, std::size_t dim) {
  QSpan s(dim);
  for (const auto& v : vs) s.add(v);
  return s.rank();
}

bool same_span(const std::vector<QVector>& a, const std::vector<QVector>& b, std::size_t dim) {
  QSpan s(dim);
  for (const auto& v : a) s.add(v);
  const std::size_t r = s.rank();
  for (const auto& v : b) {
    if (!s.contains(v)) return false;
  }
  return span_rank(b, dim) == r;
}

QVector gradient(const RatFunc& h, std::span<const Rational> l) {
  QVector g;
  for (std::size_t i = 0; i < l.size(); ++i) g.push_back(h.diff(i).eval(l));
  return g;
}

}  // namespace

FullFlag pointwise_full_flag(ConeFlag& flag, const CovectorSample& s) {
  const std::size_t n = flag.distribution().dim();
  const std::size_t dim = 2 * n;
  ClassSample cls = class_at_sample(flag, s, 0);
  const Point l = s.lambda();
  FullFlag out;
  out.nu = cls.nu;
  out.generic = cls.nu == n - 3;
  // Tangent space of {h1 = h2 = h3 = 0} intersected with ker s, s = p dx.
  QMatrix cut(4, dim);
  for (std::size_t k = 0; k < 3; ++k) {
    QVector g = gradient(flag.characteristic().h[k], l);
    for (std::size_t j = 0; j < dim; ++j) cut(k, j) = g[j];
  }
  for (std::size_t i = 0; i < n; ++i) cut(3, i) = s.p[i];
  const std::vector<QVector> h = rank_nullspace(cut).nullspace;
  out.h_dim = h.size();
  // ker of omega on H.
  QMatrix sigma(h.size(), h.size());
  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = 0; b < h.size(); ++b) sigma(a, b) = omega(n, h[a], h[b]);
  const std::vector<QVector> kernel = combine(h, rank_nullspace(sigma));
  out.kernel_dim = kernel.size();
  const QVector xc = flag.characteristic().field.eval(l);
  const QVector euler = flag.chart().euler().eval(l);
  auto in_kernel = [&](const QVector& v) {
    QSpan ks(dim);
    for (const auto& k : kernel) ks.add(k);
    return ks.contains(v);
  };
  out.kernel_contains_xc = in_kernel(xc);
  out.kernel_contains_euler = in_kernel(euler);
  std::vector<QVector> j1_lower;
  for (std::size_t i = 0; i <= cls.nu; ++i) {
    const std::vector<QVector> upper = flag.span_values(s, i);
    out.upper.push_back(span_rank(upper, dim));
    const std::vector<QVector> lower = skew_complement(n, h, upper);
    out.lower.push_back(lower.size());
    out.vertical.push_back(vertical_part_dim(n, lower));
    if (i == 1) j1_lower = lower;
  }
  if (cls.nu >= 1) {
    std::vector<QVector> expected;
    for (const auto& v : flag.vertical()) expected.push_back(v.eval(l));
    expected.push_back(xc);
    out.j1_is_vertical_plus_xc = same_span(j1_lower, expected, dim);
  }
  out.dims_match = out.kernel_dim == 2 && out.h_dim == 2 * n - 4;
  for (std::size_t i = 1; i <= cls.nu; ++i) {
    out.dims_match = out.dims_match && out.lower[i] == n - 1 - i && out.upper[i] == n - 1 + i;
  }
  return out;
}

InvolutivityCheck involutivity_check(ConeFlag& flag, const CovectorSample& s) {
  const std::size_t n = flag.distribution().dim();
  const std::size_t dim = 2 * n;
  const Point l = s.lambda();
  InvolutivityCheck out;
  // V_1(lambda) is spanned by the vertical generators.
  QSpan v1(dim), j1(dim);
  for (const auto& v : flag.vertical()) v1.add(v.eval(l));
  for (const auto& v : flag.span_values(s, 1)) j1.add(v);
  out.vertical_closed = true;
  out.j1_closed = true;
  const auto& vs = flag.vertical();
  std::vector<VectorField> j1_fields = flag.layer(0);
  j1_fields.insert(j1_fields.end(), flag.layer(1).begin(), flag.layer(1).end());
  for (std::size_t a = 0; a < vs.size(); ++a) {
    for (std::size_t b = a + 1; b < vs.size(); ++b) {
      out.vertical_closed = out.vertical_closed && v1.contains(lie_bracket(vs[a], vs[b]).eval(l));
    }
    for (const auto& g : j1_fields) {
      out.j1_closed = out.j1_closed && j1.contains(lie_bracket(vs[a], g).eval(l));
    }
  }
  return out;
}

}  // namespace rank2
