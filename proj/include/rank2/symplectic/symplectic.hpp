#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rank2/distribution/distribution.hpp"
#include "rank2/exact/span.hpp"

namespace rank2 {

namespace detail {
class FieldPruner;
}

// T*M over a base chart: coordinates (x_1..x_n, p_1..p_n) with p_i dual to
// x_i. Momentum names are "p_" + base name.
class CotangentChart {
 public:
  CotangentChart() = default;
  explicit CotangentChart(Chart base);

  const Chart& base() const noexcept { return base_; }
  const Chart& total() const noexcept { return total_; }
  std::size_t n() const noexcept { return base_.dim(); }
  std::size_t momentum(std::size_t i) const noexcept { return n() + i; }

  // Pulls a base function back to T*M.
  RatFunc lift(const RatFunc& f) const;
  // The vertical field sum_i w_i(x) d/dp_i.
  VectorField vertical(const OneForm& w) const;
  // The Euler field sum_i p_i d/dp_i.
  VectorField euler() const;

 private:
  Chart base_;
  Chart total_;
};

// h_X = sum_i p_i X^i(x).
RatFunc hamiltonian_of(const CotangentChart& t, const VectorField& x);
// {f, g} = sum_i (df/dp_i dg/dx_i - df/dx_i dg/dp_i), so {p_i, x_j} = delta_ij
// and {h_X, h_Y} = h_[X,Y].
RatFunc poisson(const CotangentChart& t, const RatFunc& f, const RatFunc& g);
// Hamiltonian field with h->(g) = {h, g}: sum_i dh/dp_i d/dx_i - dh/dx_i d/dp_i.
VectorField hamiltonian_field(const CotangentChart& t, const RatFunc& h);
// omega(u, v) = sum_i (u_{p_i} v_{x_i} - u_{x_i} v_{p_i}) on tangent vectors of T*M.
Rational omega(std::size_t n, const QVector& u, const QVector& v);

// Characteristic data of a rank-2 distribution: h1 = h_X1, h2 = h_X2,
// h3 = h_[X1,X2], h4 = h_[X1,X3], h5 = h_[X2,X3], and
// X_C = h5 h1-> - h4 h2->, tangent to {h1 = h2 = h3 = 0}:
// X_C h1 = h4 h3, X_C h2 = h5 h3, X_C h3 = 0.
struct CharField {
  CotangentChart chart;
  std::array<RatFunc, 5> h;
  VectorField field;
};
CharField char_field(const Distribution& d);

// A point of (D^2)^perp \ (D^3)^perp.
struct CovectorSample {
  Point q;
  Point p;
  std::array<Rational, 5> h;
  Point lambda() const;
};

// Validates (q, p) and caches the h-values. Throws PreconditionError when
// h1, h2, h3 do not vanish or h4 = h5 = 0.
CovectorSample make_sample(const Distribution& d, std::span<const Rational> q, std::span<const Rational> p);
// Random rational covector in the annihilator of D^2(q), off (D^3)^perp.
// Requires dim D^3(q) = 5.
CovectorSample fiber_sample(const Distribution& d, std::span<const Rational> q, std::uint64_t seed);
std::vector<CovectorSample> fiber_samples(const Distribution& d, std::span<const Rational> q,
                                          std::size_t count, std::uint64_t seed);

// The cone over the lift J of D and its osculating flag
// J^(i+1) = J^(i) + [X_C, J^(i)]. All fields are polynomial on T*M and built
// once; values are taken at covector samples.
class ConeFlag {
 public:
  explicit ConeFlag(const Distribution& d);
  ~ConeFlag();
  ConeFlag(ConeFlag&&) noexcept;

  const Distribution& distribution() const noexcept { return d_; }
  const CotangentChart& chart() const noexcept { return xc_.chart; }
  const CharField& characteristic() const noexcept { return xc_; }
  // n-3 vertical fields from the annihilator of D^2.
  const std::vector<VectorField>& vertical() const noexcept { return vertical_; }
  // Corrected lifts W1, W2 (scaled by a polynomial of the base that must not
  // vanish at the sample).
  const std::vector<VectorField>& lifts() const noexcept { return lifts_; }
  // n-1 generators of the cone over J: vertical fields then W1, W2.
  std::vector<VectorField> generators() const;
  // Fields introduced at round k (k = 0 are the generators).
  const std::vector<VectorField>& layer(std::size_t k);
  // Checks the sample is usable: generators independent, X_C nonzero.
  void check_sample(const CovectorSample& s) const;
  // Exact ranks r_0, ..., r_rounds of J^(0..rounds) at the sample.
  std::vector<std::size_t> ranks(const CovectorSample& s, std::size_t rounds);
  // Values at lambda of all fields spanning J^(k).
  std::vector<QVector> span_values(const CovectorSample& s, std::size_t k);

 private:
  Distribution d_;
  CharField xc_;
  std::vector<VectorField> vertical_;
  std::vector<VectorField> lifts_;
  RatFunc lift_scale_;  // base polynomial multiplying W1, W2
  std::vector<std::vector<VectorField>> layers_;
  std::unique_ptr<detail::FieldPruner> pruner_;
};

// Cone convention: every dimension below is that of the cone over the
// projectivized object, so it carries +1 for the Euler direction; nu itself
// is unaffected.
struct ClassSample {
  CovectorSample sample;
  std::size_t nu = 0;
  std::vector<std::size_t> trace;  // r_0 .. r_{nu+1}
  bool generic = true;             // nu equals the maximum over the samples
};

ClassSample class_at_sample(ConeFlag& flag, const CovectorSample& s, std::size_t depth_cap);
ClassSample class_at_sample(const Distribution& d, const CovectorSample& s, std::size_t depth_cap);

struct ClassReport {
  std::vector<ClassSample> samples;
  std::size_t m = 0;
  bool maximal = false;
  std::uint64_t seed = 0;
  std::string convention;
};

extern const char* const kConeConvention;

// m(q) = max nu over seeded fiber samples; maximal iff m = n - 3. Requires
// dim D^3(q) = 5.
ClassReport class_at_point(const Distribution& d, std::span<const Rational> q, std::size_t samples,
                           std::uint64_t seed, std::size_t depth_cap = 0);
ClassReport class_at_point(ConeFlag& flag, std::span<const Rational> q, std::size_t samples,
                           std::uint64_t seed, std::size_t depth_cap = 0);

// Pointwise subspaces at a covector sample (cone dimensions).
struct FullFlag {
  std::size_t nu = 0;
  std::size_t h_dim = 0;       // H = T(annihilator submanifold) cap ker s
  std::size_t kernel_dim = 0;  // ker of omega restricted to H
  std::vector<std::size_t> upper;     // dim J^(i), i = 0..nu
  std::vector<std::size_t> lower;     // dim J_(i), i = 0..nu
  std::vector<std::size_t> vertical;  // dim V_i = J_(i) cap vertical, i = 0..nu
  bool kernel_contains_xc = false;
  bool kernel_contains_euler = false;
  bool j1_is_vertical_plus_xc = false;
  bool dims_match = false;  // closed forms for 0 < i <= nu and kernel_dim == 2
  bool generic = true;      // nu == n - 3
};

FullFlag pointwise_full_flag(ConeFlag& flag, const CovectorSample& s);

struct InvolutivityCheck {
  bool vertical_closed = false;  // [v, w](lambda) in V_1(lambda)
  bool j1_closed = false;        // [v, g](lambda) in J^(1)(lambda)
};
InvolutivityCheck involutivity_check(ConeFlag& flag, const CovectorSample& s);

}  // namespace rank2
