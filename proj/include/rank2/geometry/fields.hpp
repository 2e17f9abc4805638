#pragma once

#include <span>
#include <string>
#include <vector>

#include "rank2/exact/matrix.hpp"
#include "rank2/geometry/chart.hpp"

namespace rank2 {

// Vector field sum_i X^i d/dx_i with rational-function components.
class VectorField {
 public:
  VectorField() = default;
  VectorField(Chart chart, std::vector<RatFunc> components);
  static VectorField zero(const Chart& chart);
  // The coordinate field d/dx_i.
  static VectorField coordinate(const Chart& chart, std::size_t i);

  const Chart& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return components_.size(); }
  const std::vector<RatFunc>& components() const noexcept { return components_; }
  const RatFunc& operator[](std::size_t i) const { return components_[i]; }

  bool is_zero() const;
  bool is_polynomial() const;

  // Directional derivative X(f).
  RatFunc apply(const RatFunc& f) const;
  QVector eval(std::span<const Rational> point) const;
  std::vector<double> eval(std::span<const double> point) const;
  bool has_pole_at(std::span<const Rational> point) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const RatFunc& f, const VectorField& x);
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.chart_ == b.chart_ && a.components_ == b.components_;
  }

 private:
  Chart chart_;
  std::vector<RatFunc> components_;
};

// Differential one-form sum_i w_i dx_i.
class OneForm {
 public:
  OneForm() = default;
  OneForm(Chart chart, std::vector<RatFunc> components);
  static OneForm coordinate(const Chart& chart, std::size_t i);

  const Chart& chart() const noexcept { return chart_; }
  const std::vector<RatFunc>& components() const noexcept { return components_; }
  const RatFunc& operator[](std::size_t i) const { return components_[i]; }

  friend OneForm operator+(const OneForm& a, const OneForm& b);
  friend OneForm operator-(const OneForm& a, const OneForm& b);
  friend OneForm operator*(const RatFunc& f, const OneForm& w);

 private:
  Chart chart_;
  std::vector<RatFunc> components_;
};

// [X, Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i). Throws ChartMismatch.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

// <w, X> = sum_i w_i X^i. Throws ChartMismatch.
RatFunc pair(const OneForm& w, const VectorField& x);

// Pushforward of X under q -> A q. Throws SingularMatrix for singular A.
VectorField linear_change(const VectorField& x, const QMatrix& a);

std::string to_string(const VectorField& x);
std::string to_string(const OneForm& w);

}  // namespace rank2
