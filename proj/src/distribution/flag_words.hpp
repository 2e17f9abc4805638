#pragma once

#include <map>
#include <utility>
#include <vector>

#include "rank2/exact/span.hpp"
#include "rank2/geometry/fields.hpp"

namespace rank2::detail {

// Discards bracket words that add nothing new. Polynomial fields are compared
// by exact Q-linear dependence of their coefficient vectors (sound, since the
// bracket is Q-bilinear); for rational fields only zeros and exact duplicates
// are dropped.
class FieldPruner {
 public:
  explicit FieldPruner(bool polynomial) : polynomial_(polynomial) {}
  // True when x is kept.
  bool add(const VectorField& x);

 private:
  struct KeyLess {
    bool operator()(const std::pair<std::size_t, Monomial>& a,
                    const std::pair<std::size_t, Monomial>& b) const;
  };
  std::size_t key(std::size_t component, const Monomial& m);

  bool polynomial_;
  std::map<std::pair<std::size_t, Monomial>, std::size_t, KeyLess> ids_;
  SparseSpan span_;
  std::vector<VectorField> seen_;
};

}  // namespace rank2::detail
