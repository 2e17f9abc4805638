#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "rank2/exact/matrix.hpp"

namespace rank2 {

// Incremental row echelon basis of dense vectors over Q.
class QSpan {
 public:
  explicit QSpan(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  // Residue of v after reduction by the current basis (zero iff v is in the span).
  QVector reduce(QVector v) const;
  bool contains(const QVector& v) const;
  // Adds v; returns true when the rank increased.
  bool add(const QVector& v);

 private:
  std::size_t dim_;
  std::vector<QVector> rows_;  // each with leading 1 at pivots_[k]
  std::vector<std::size_t> pivots_;
};

// Sparse vector over Q keyed by arbitrary integer coordinates.
using SparseVector = std::map<std::size_t, Rational>;

// Incremental echelon basis of sparse vectors; each stored vector has its
// pivot at its smallest key, so reduction proceeds in increasing key order.
class SparseSpan {
 public:
  std::size_t rank() const noexcept { return rows_.size(); }
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  bool add(const SparseVector& v);

 private:
  std::map<std::size_t, SparseVector> rows_;  // pivot key -> row with leading 1
};

}  // namespace rank2
