#include "rank2/exact/span.hpp"

namespace rank2 {

QVector QSpan::reduce(QVector v) const {
  if (v.size() != dim_) throw Error("vector has wrong length for span");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Rational f = v[pivots_[k]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(rows_[k][j]) != 0) v[j] -= f * rows_[k][j];
    }
  }
  return v;
}

bool QSpan::contains(const QVector& v) const {
  QVector r = reduce(v);
  for (const auto& x : r) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

bool QSpan::add(const QVector& v) {
  QVector r = reduce(v);
  std::size_t p = 0;
  while (p < dim_ && sgn(r[p]) == 0) ++p;
  if (p == dim_) return false;
  const Rational inv = 1 / r[p];
  for (auto& x : r) x *= inv;
  // Keep earlier rows reduced against the new pivot.
  for (auto& row : rows_) {
    const Rational f = row[p];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (sgn(r[j]) != 0) row[j] -= f * r[j];
    }
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(p);
  return true;
}

SparseVector SparseSpan::reduce(SparseVector v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const Rational f = it->second;
    const std::size_t key = it->first;
    for (const auto& [k, c] : row->second) {
      Rational& slot = v[k];
      slot -= f * c;
    }
    // Drop zeros created above (all at keys >= key).
    for (auto jt = v.lower_bound(key); jt != v.end();) {
      if (sgn(jt->second) == 0) {
        jt = v.erase(jt);
      } else {
        ++jt;
      }
    }
    it = v.upper_bound(key);
  }
  return v;
}

bool SparseSpan::add(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.empty()) return false;
  const Rational inv = 1 / r.begin()->second;
  for (auto& [k, c] : r) c *= inv;
  const std::size_t pivot = r.begin()->first;
  rows_.emplace(pivot, std::move(r));
  return true;
}

}  // namespace rank2
