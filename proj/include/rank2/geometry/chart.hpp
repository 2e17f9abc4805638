#pragma once

#include <span>
#include <string>
#include <vector>

#include "rank2/exact/poly.hpp"
#include "rank2/exact/rational.hpp"

namespace rank2 {

using Point = std::vector<Rational>;

// A global polynomial chart: an ordered list of distinct coordinate names.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<std::string> coords) : ring_(Ring::make(std::move(coords))) {}
  explicit Chart(RingPtr ring) : ring_(std::move(ring)) {}

  std::size_t dim() const noexcept { return ring_ ? ring_->size() : 0; }
  const std::vector<std::string>& coords() const { return ring_->names(); }
  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t index_of(std::string_view name) const { return ring_->require_index(name); }

  // Throws Error if the point has the wrong number of coordinates.
  void check_point(std::span<const Rational> p) const;
  Point origin() const { return Point(dim(), Rational(0)); }

  friend bool operator==(const Chart& a, const Chart& b) { return compatible(a.ring_, b.ring_); }

 private:
  RingPtr ring_;
};

std::string to_string(std::span<const Rational> point);

}  // namespace rank2
