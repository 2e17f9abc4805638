#include "rank2/geometry/fields.hpp"

#include <algorithm>

#include "rank2/error.hpp"

namespace rank2 {
namespace {

void same_chart(const Chart& a, const Chart& b) {
  if (!(a == b) || a.dim() != b.dim()) throw ChartMismatch("objects live on different charts");
}

RatFunc zero_on(const Chart& c) { return RatFunc(Poly(c.ring())); }

}  // namespace

VectorField::VectorField(Chart chart, std::vector<RatFunc> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_.dim()) throw Error("vector field has the wrong number of components");
  for (auto& c : components_) {
    if (!compatible(c.ring(), chart_.ring())) throw ChartMismatch("component outside the chart");
    if (!c.ring()) c = RatFunc(Poly(chart_.ring()) + c.num(), Poly(chart_.ring()) + c.den());
  }
}

VectorField VectorField::zero(const Chart& chart) {
  return VectorField(chart, std::vector<RatFunc>(chart.dim(), zero_on(chart)));
}

VectorField VectorField::coordinate(const Chart& chart, std::size_t i) {
  std::vector<RatFunc> c(chart.dim(), zero_on(chart));
  c.at(i) = RatFunc(Poly(chart.ring(), Rational(1)));
  return VectorField(chart, std::move(c));
}

bool VectorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const RatFunc& f) { return f.is_zero(); });
}

bool VectorField::is_polynomial() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const RatFunc& f) { return f.is_polynomial(); });
}

RatFunc VectorField::apply(const RatFunc& f) const {
  RatFunc acc = zero_on(chart_);
  for (std::size_t j = 0; j < components_.size(); ++j) {
    if (components_[j].is_zero()) continue;
    RatFunc d = f.diff(j);
    if (d.is_zero()) continue;
    acc += components_[j] * d;
  }
  return acc;
}

QVector VectorField::eval(std::span<const Rational> point) const {
  chart_.check_point(point);
  QVector out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.eval(point));
  return out;
}

std::vector<double> VectorField::eval(std::span<const double> point) const {
  std::vector<double> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.eval(point));
  return out;
}

bool VectorField::has_pole_at(std::span<const Rational> point) const {
  return std::any_of(components_.begin(), components_.end(),
                     [&](const RatFunc& f) { return f.has_pole_at(point); });
}

VectorField VectorField::operator-() const {
  std::vector<RatFunc> c;
  c.reserve(components_.size());
  for (const auto& f : components_) c.push_back(-f);
  return VectorField(chart_, std::move(c));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  same_chart(a.chart_, b.chart_);
  std::vector<RatFunc> c;
  c.reserve(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c.push_back(a.components_[i] + b.components_[i]);
  return VectorField(a.chart_, std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator*(const RatFunc& f, const VectorField& x) {
  std::vector<RatFunc> c;
  c.reserve(x.dim());
  for (const auto& comp : x.components_) c.push_back(f * comp);
  return VectorField(x.chart_, std::move(c));
}

OneForm::OneForm(Chart chart, std::vector<RatFunc> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_.dim()) throw Error("one-form has the wrong number of components");
  for (auto& c : components_) {
    if (!compatible(c.ring(), chart_.ring())) throw ChartMismatch("component outside the chart");
    if (!c.ring()) c = RatFunc(Poly(chart_.ring()) + c.num(), Poly(chart_.ring()) + c.den());
  }
}

OneForm OneForm::coordinate(const Chart& chart, std::size_t i) {
  std::vector<RatFunc> c(chart.dim(), zero_on(chart));
  c.at(i) = RatFunc(Poly(chart.ring(), Rational(1)));
  return OneForm(chart, std::move(c));
}

OneForm operator+(const OneForm& a, const OneForm& b) {
  same_chart(a.chart_, b.chart_);
  std::vector<RatFunc> c;
  for (std::size_t i = 0; i < a.components_.size(); ++i) c.push_back(a.components_[i] + b.components_[i]);
  return OneForm(a.chart_, std::move(c));
}

OneForm operator-(const OneForm& a, const OneForm& b) { return a + (RatFunc(-1L) * b); }

OneForm operator*(const RatFunc& f, const OneForm& w) {
  std::vector<RatFunc> c;
  for (const auto& comp : w.components_) c.push_back(f * comp);
  return OneForm(w.chart_, std::move(c));
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  same_chart(x.chart(), y.chart());
  std::vector<RatFunc> c;
  c.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) c.push_back(x.apply(y[i]) - y.apply(x[i]));
  return VectorField(x.chart(), std::move(c));
}

RatFunc pair(const OneForm& w, const VectorField& x) {
  same_chart(w.chart(), x.chart());
  RatFunc acc = zero_on(x.chart());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (w[i].is_zero() || x[i].is_zero()) continue;
    acc += w[i] * x[i];
  }
  return acc;
}

VectorField linear_change(const VectorField& x, const QMatrix& a) {
  const std::size_t n = x.dim();
  if (a.rows() != n || a.cols() != n) throw Error("linear change must be dim x dim");
  QMatrix ainv = inverse(a);
  const RingPtr& ring = x.chart().ring();
  // Old coordinates as functions of the new ones: q = A^{-1} y.
  std::vector<Poly> images;
  images.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Poly img(ring);
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(ainv(j, k)) != 0) img += Poly::variable(ring, k) * ainv(j, k);
    }
    images.push_back(std::move(img));
  }
  std::vector<RatFunc> pulled;
  pulled.reserve(n);
  for (const auto& c : x.components()) pulled.push_back(c.substitute(images));
  std::vector<RatFunc> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    RatFunc acc{Poly(ring)};
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(a(i, j)) != 0 && !pulled[j].is_zero()) acc += RatFunc(a(i, j)) * pulled[j];
    }
    out.push_back(std::move(acc));
  }
  return VectorField(x.chart(), std::move(out));
}

std::string to_string(const VectorField& x) {
  std::string s;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (x[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(x[i]) + ")*d_" + x.chart().coords()[i];
  }
  return s.empty() ? "0" : s;
}

std::string to_string(const OneForm& w) {
  std::string s;
  for (std::size_t i = 0; i < w.components().size(); ++i) {
    if (w[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + to_string(w[i]) + ")*d" + w.chart().coords()[i];
  }
  return s.empty() ? "0" : s;
}

}  // namespace rank2
