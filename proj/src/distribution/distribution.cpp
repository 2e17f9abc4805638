#include "rank2/distribution/distribution.hpp"

#include <random>

#include "flag_words.hpp"
#include "rank2/error.hpp"
#include "rank2/exact/span.hpp"

namespace rank2 {

Distribution::Distribution(Chart chart, std::vector<VectorField> frame)
    : chart_(std::move(chart)), frame_(std::move(frame)) {
  if (frame_.empty()) throw Error("a distribution needs at least one frame field");
  for (const auto& x : frame_) {
    if (!(x.chart() == chart_) || x.dim() != chart_.dim()) {
      throw ChartMismatch("frame field does not live on the distribution's chart");
    }
  }
}

bool Distribution::is_polynomial() const {
  for (const auto& x : frame_) {
    if (!x.is_polynomial()) return false;
  }
  return true;
}

void Distribution::check_point(std::span<const Rational> q) const {
  chart_.check_point(q);
  QSpan values(dim());
  for (const auto& x : frame_) {
    if (x.has_pole_at(q)) throw PoleError("frame has a pole at " + to_string(q));
    values.add(x.eval(q));
  }
  if (values.rank() != frame_.size()) {
    throw PreconditionError("frame is dependent at " + to_string(q));
  }
}

namespace detail {

std::size_t FieldPruner::key(std::size_t component, const Monomial& m) {
  auto [it, inserted] = ids_.try_emplace(std::make_pair(component, m), ids_.size());
  (void)inserted;
  return it->second;
}

bool FieldPruner::add(const VectorField& x) {
  if (x.is_zero()) return false;
  if (polynomial_ && x.is_polynomial()) {
    SparseVector v;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      const RatFunc& c = x[i];
      const Rational scale = 1 / c.den().leading().coeff;
      for (const auto& t : c.num().terms()) v[key(i, t.mono)] = t.coeff * scale;
    }
    return span_.add(v);
  }
  polynomial_ = false;
  for (const auto& y : seen_) {
    if (y == x) return false;
  }
  seen_.push_back(x);
  return true;
}

bool FieldPruner::KeyLess::operator()(const std::pair<std::size_t, Monomial>& a,
                                      const std::pair<std::size_t, Monomial>& b) const {
  if (a.first != b.first) return a.first < b.first;
  return compare_grlex(a.second, b.second) < 0;
}

}  // namespace detail

FlagReport weak_flag(const Distribution& d, std::span<const Rational> q, std::size_t max_depth) {
  d.check_point(q);
  const std::size_t n = d.dim();
  FlagReport out;
  out.kind = FlagKind::weak;
  detail::FieldPruner pruner(d.is_polynomial());
  QSpan values(n);
  std::vector<VectorField> level;
  for (const auto& x : d.frame()) {
    if (pruner.add(x)) level.push_back(x);
    values.add(x.eval(q));
  }
  out.generators.push_back(level);
  out.dims.push_back(values.rank());
  for (std::size_t depth = 2; depth <= max_depth && values.rank() < n; ++depth) {
    std::vector<VectorField> next;
    for (const auto& x : d.frame()) {
      for (const auto& w : level) {
        VectorField b = lie_bracket(x, w);
        if (!pruner.add(b)) continue;
        values.add(b.eval(q));
        next.push_back(std::move(b));
      }
    }
    out.dims.push_back(values.rank());
    const bool exhausted = next.empty();
    out.generators.push_back(next);
    level = std::move(next);
    if (exhausted) {
      out.stabilized = true;
      return out;
    }
  }
  out.stabilized = values.rank() == n;
  return out;
}

FlagReport strong_flag(const Distribution& d, std::span<const Rational> q, std::size_t max_depth) {
  d.check_point(q);
  const std::size_t n = d.dim();
  FlagReport out;
  out.kind = FlagKind::strong;
  detail::FieldPruner pruner(d.is_polynomial());
  QSpan values(n);
  std::vector<VectorField> all, newest;
  for (const auto& x : d.frame()) {
    if (pruner.add(x)) newest.push_back(x);
    values.add(x.eval(q));
  }
  out.generators.push_back(newest);
  out.dims.push_back(values.rank());
  for (std::size_t depth = 2; depth <= max_depth && values.rank() < n; ++depth) {
    const std::size_t old_count = all.size();
    all.insert(all.end(), newest.begin(), newest.end());
    std::vector<VectorField> next;
    // Pairs with at least one member in the newest layer.
    for (std::size_t j = old_count; j < all.size(); ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        VectorField b = lie_bracket(all[i], all[j]);
        if (!pruner.add(b)) continue;
        values.add(b.eval(q));
        next.push_back(std::move(b));
      }
    }
    out.dims.push_back(values.rank());
    const bool exhausted = next.empty();
    out.generators.push_back(next);
    newest = std::move(next);
    if (exhausted) {
      out.stabilized = true;
      return out;
    }
  }
  out.stabilized = values.rank() == n;
  return out;
}

std::vector<Point> sample_points_near(const Distribution& d, std::span<const Rational> q,
                                      std::size_t count, std::uint64_t seed) {
  d.chart().check_point(q);
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  const std::size_t budget = 50 * (count + 1);
  for (std::size_t attempt = 0; attempt < budget && out.size() < count; ++attempt) {
    Point p(q.begin(), q.end());
    for (auto& c : p) c += make_rational(long(rng() % 7) - 3, 2);
    try {
      d.check_point(p);
    } catch (const PoleError&) {
      continue;
    } catch (const PreconditionError&) {
      continue;
    }
    out.push_back(std::move(p));
  }
  if (out.size() < count) {
    throw PreconditionError("could not find " + std::to_string(count) +
                            " regular sample points near " + to_string(q));
  }
  return out;
}

bool is_goursat(const Distribution& d, std::span<const Rational> q, std::size_t extra_samples,
                std::uint64_t seed) {
  const std::size_t n = d.dim();
  std::vector<std::size_t> expected;
  for (std::size_t k = 2; k <= n; ++k) expected.push_back(k);
  std::vector<Point> points{Point(q.begin(), q.end())};
  for (auto& p : sample_points_near(d, q, extra_samples, seed)) points.push_back(std::move(p));
  for (const auto& p : points) {
    if (strong_flag(d, p, n).dims != expected) return false;
  }
  return true;
}

std::size_t cube_dim(const Distribution& d, std::span<const Rational> q) {
  FlagReport f = weak_flag(d, q, 3);
  std::size_t cube = f.dims.back();
  if (d.rank() == 2 && cube > 5) throw Error("rank-2 cube exceeds 5; bracket computation is inconsistent");
  return cube;
}

EquiregularVerdict equiregular_check(const Distribution& d, std::span<const Rational> q,
                                     std::size_t samples, std::uint64_t seed) {
  EquiregularVerdict out;
  out.points.emplace_back(q.begin(), q.end());
  for (auto& p : sample_points_near(d, q, samples, seed)) out.points.push_back(std::move(p));
  const std::size_t depth = 2 * d.dim();
  out.equiregular = true;
  for (const auto& p : out.points) {
    out.growth.push_back(weak_flag(d, p, depth).dims);
    if (out.growth.back() != out.growth.front()) out.equiregular = false;
  }
  return out;
}

}  // namespace rank2

namespace rank2 {

std::vector<OneForm> annihilator_basis(const Chart& chart, const std::vector<VectorField>& fields) {
  FMatrix m(fields.size(), chart.dim());
  for (std::size_t i = 0; i < fields.size(); ++i)
    for (std::size_t j = 0; j < chart.dim(); ++j) m(i, j) = fields[i][j];
  RankNullspace<RatFunc> rn = rank_nullspace(m);
  std::vector<OneForm> out;
  out.reserve(rn.nullspace.size());
  for (auto& v : rn.nullspace) out.emplace_back(chart, std::move(v));
  return out;
}

std::vector<VectorField> square_frame(const Distribution& d) {
  if (d.rank() != 2) throw PreconditionError("square_frame needs a rank-2 distribution");
  return {d[0], d[1], lie_bracket(d[0], d[1])};
}

}  // namespace rank2
