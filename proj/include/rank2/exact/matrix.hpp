#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rank2/error.hpp"
#include "rank2/exact/ratfunc.hpp"

namespace rank2 {

// Dense row-major matrix with exact entries (Rational or RatFunc).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0L)) {}
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw Error("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1L);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + std::ptrdiff_t(i * cols_),
                          data_.begin() + std::ptrdiff_t((i + 1) * cols_));
  }
  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw Error("appended row has wrong length");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0L)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using FMatrix = Matrix<RatFunc>;
using QVector = std::vector<Rational>;
using FVector = std::vector<RatFunc>;

template <typename T>
struct RankNullspace {
  std::size_t rank = 0;
  std::vector<std::vector<T>> nullspace;  // basis of {x : M x = 0}
  std::vector<std::size_t> pivot_columns;
};

// Reduced row echelon form over Q with pivot columns in increasing order.
struct Echelon {
  QMatrix reduced;  // nonzero rows only
  std::vector<std::size_t> pivot_columns;
};
Echelon rref(const QMatrix& m);

// Gauss-Jordan over Q. Nullspace vectors have a 1 in their free column.
RankNullspace<Rational> rank_nullspace(const QMatrix& m);
std::size_t rank(const QMatrix& m);

// Fraction-free (Bareiss) elimination over the rational-function field.
// Pivots: lowest total degree among remaining entries, ties by column, then
// row. Nullspace vectors are scaled to primitive polynomial entries.
RankNullspace<RatFunc> rank_nullspace(const FMatrix& m);
std::size_t rank(const FMatrix& m);

Rational determinant(const QMatrix& m);
// Throws SingularMatrix.
QMatrix inverse(const QMatrix& m);

// Some solution of M x = b, or throws SingularMatrix when inconsistent.
QVector solve(const QMatrix& m, const QVector& b);
// Solution over the function field; throws SingularMatrix when inconsistent.
FVector solve(const FMatrix& m, const FVector& b);

QMatrix evaluate(const FMatrix& m, std::span<const Rational> point);

// Does v lie in the row space spanned by `rows`?
bool in_span(const std::vector<QVector>& rows, const QVector& v);

}  // namespace rank2
