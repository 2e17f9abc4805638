#include "rank2/geometry/chart.hpp"

#include "rank2/error.hpp"

namespace rank2 {

void Chart::check_point(std::span<const Rational> p) const {
  if (p.size() != dim()) {
    throw Error("point has " + std::to_string(p.size()) + " coordinates, chart has " +
                std::to_string(dim()));
  }
}

std::string to_string(std::span<const Rational> point) {
  std::string s = "(";
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) s += ", ";
    s += to_string(point[i]);
  }
  return s + ")";
}

}  // namespace rank2
