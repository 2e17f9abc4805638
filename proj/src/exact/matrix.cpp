#include "rank2/exact/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace rank2 {

Echelon rref(const QMatrix& input) {
  QMatrix m = input;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(m(r, j)) != 0) m(i, j) -= f * m(r, j);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  QMatrix reduced(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) reduced(i, j) = m(i, j);
  return Echelon{std::move(reduced), std::move(pivots)};
}

RankNullspace<Rational> rank_nullspace(const QMatrix& m) {
  Echelon e = rref(m);
  RankNullspace<Rational> out;
  out.rank = e.pivot_columns.size();
  out.pivot_columns = e.pivot_columns;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < e.pivot_columns.size(); ++k) v[e.pivot_columns[k]] = -e.reduced(k, f);
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivot_columns.size(); }

namespace {

// Fraction-free forward elimination on a polynomial matrix. Returns the
// echelon rows (in pivot order) and their pivot columns.
struct PolyEchelon {
  std::vector<std::vector<Poly>> rows;
  std::vector<std::size_t> pivot_columns;
};

// Only the first `pivot_limit` columns are eligible as pivots; any further
// columns are carried along (used for augmented systems).
PolyEchelon bareiss(std::vector<std::vector<Poly>> a, std::size_t cols, std::size_t pivot_limit) {
  PolyEchelon out;
  std::vector<bool> row_used(a.size(), false), col_used(cols, false);
  RingPtr ring;
  for (const auto& r : a)
    for (const auto& p : r)
      if (!ring && p.ring()) ring = p.ring();
  Poly prev(ring, Rational(1));
  while (true) {
    std::optional<std::size_t> best_r, best_c;
    int best_deg = 0;
    for (std::size_t c = 0; c < pivot_limit; ++c) {
      if (col_used[c]) continue;
      for (std::size_t r = 0; r < a.size(); ++r) {
        if (row_used[r] || a[r][c].is_zero()) continue;
        int d = a[r][c].degree();
        if (!best_r || d < best_deg) {
          best_r = r;
          best_c = c;
          best_deg = d;
        }
      }
    }
    if (!best_r) break;
    const std::size_t pr = *best_r, pc = *best_c;
    row_used[pr] = true;
    col_used[pc] = true;
    const Poly pivot = a[pr][pc];
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (row_used[r]) continue;
      const Poly factor = a[r][pc];
      for (std::size_t c = 0; c < cols; ++c) {
        if (col_used[c] && c != pc) continue;  // already eliminated columns stay zero
        Poly v = pivot * a[r][c];
        if (!factor.is_zero() && !a[pr][c].is_zero()) v -= factor * a[pr][c];
        a[r][c] = prev.is_one() ? std::move(v) : divide_exact(v, prev);
      }
    }
    out.rows.push_back(a[pr]);
    out.pivot_columns.push_back(pc);
    prev = pivot;
  }
  return out;
}

std::vector<std::vector<Poly>> clear_row_denominators(const FMatrix& m, RingPtr& ring) {
  std::vector<std::vector<Poly>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Poly l(Rational(1));
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Poly& d = m(i, j).den();
      if (!ring && m(i, j).ring()) ring = m(i, j).ring();
      if (d.is_constant()) continue;
      l = divide_exact(l * d, gcd(l, d));
    }
    rows[i].reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const RatFunc& e = m(i, j);
      rows[i].push_back(e.den().is_one() ? e.num() * l : e.num() * divide_exact(l, e.den()));
    }
  }
  return rows;
}

// Scale a function-field vector to coprime polynomial entries.
FVector make_primitive(const FVector& v) {
  Poly l(Rational(1));
  for (const auto& e : v) {
    if (e.den().is_constant()) continue;
    l = divide_exact(l * e.den(), gcd(l, e.den()));
  }
  std::vector<Poly> nums;
  Poly g;
  for (const auto& e : v) {
    Poly p = e.den().is_one() ? e.num() * l : e.num() * divide_exact(l, e.den());
    g = g.is_zero() ? p.monic() : gcd(g, p);
    nums.push_back(std::move(p));
  }
  FVector out;
  out.reserve(v.size());
  for (auto& p : nums) out.emplace_back(g.is_zero() ? p : divide_exact(p, g));
  // Integer coefficients with a positive leading entry at the first nonzero slot.
  Rational scale(0);
  Integer num_gcd = 0, den_lcm = 1;
  for (const auto& e : out) {
    for (const auto& t : e.num().terms()) {
      mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  }
  if (num_gcd == 0) return out;
  scale = Rational(den_lcm, num_gcd);
  scale.canonicalize();
  for (const auto& e : out) {
    if (e.is_zero()) continue;
    if (sgn(e.num().leading().coeff) < 0) scale = -scale;
    break;
  }
  for (auto& e : out) e = RatFunc(e.num() * scale);
  return out;
}

}  // namespace

RankNullspace<RatFunc> rank_nullspace(const FMatrix& m) {
  RingPtr ring;
  auto poly_rows = clear_row_denominators(m, ring);
  PolyEchelon e = bareiss(std::move(poly_rows), m.cols(), m.cols());
  RankNullspace<RatFunc> out;
  out.rank = e.pivot_columns.size();
  out.pivot_columns = e.pivot_columns;
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    FVector x(m.cols(), RatFunc(Poly(ring)));
    x[f] = RatFunc(Poly(ring, Rational(1)));
    for (std::size_t k = e.rows.size(); k-- > 0;) {
      const std::size_t pc = e.pivot_columns[k];
      RatFunc acc{Poly(ring)};
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j == pc || e.rows[k][j].is_zero() || x[j].is_zero()) continue;
        acc += RatFunc(e.rows[k][j]) * x[j];
      }
      x[pc] = -acc / RatFunc(e.rows[k][pc]);
    }
    out.nullspace.push_back(make_primitive(x));
  }
  return out;
}

std::size_t rank(const FMatrix& m) {
  RingPtr ring;
  return bareiss(clear_row_denominators(m, ring), m.cols(), m.cols()).pivot_columns.size();
}

Rational determinant(const QMatrix& input) {
  if (input.rows() != input.cols()) throw Error("determinant of a non-square matrix");
  QMatrix m = input;
  const std::size_t n = m.rows();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrix("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Echelon e = rref(aug);
  if (e.pivot_columns.size() < n || e.pivot_columns[n - 1] != n - 1) {
    throw SingularMatrix("matrix is singular");
  }
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

QVector solve(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw Error("right-hand side has wrong length");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon e = rref(aug);
  if (!e.pivot_columns.empty() && e.pivot_columns.back() == m.cols()) {
    throw SingularMatrix("linear system is inconsistent");
  }
  QVector x(m.cols(), Rational(0));
  for (std::size_t k = 0; k < e.pivot_columns.size(); ++k) x[e.pivot_columns[k]] = e.reduced(k, m.cols());
  return x;
}

FVector solve(const FMatrix& m, const FVector& b) {
  if (b.size() != m.rows()) throw Error("right-hand side has wrong length");
  FMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = -b[i];
  }
  if (rank(aug) != rank(m)) throw SingularMatrix("linear system is inconsistent");
  RingPtr ring;
  PolyEchelon e = bareiss(clear_row_denominators(aug, ring), m.cols() + 1, m.cols());
  FVector x(m.cols(), RatFunc(Poly(ring)));
  for (std::size_t k = e.rows.size(); k-- > 0;) {
    const std::size_t pc = e.pivot_columns[k];
    RatFunc acc(e.rows[k][m.cols()]);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j == pc || e.rows[k][j].is_zero() || x[j].is_zero()) continue;
      acc += RatFunc(e.rows[k][j]) * x[j];
    }
    x[pc] = -acc / RatFunc(e.rows[k][pc]);
  }
  return x;
}

QMatrix evaluate(const FMatrix& m, std::span<const Rational> point) {
  QMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).eval(point);
  return out;
}

bool in_span(const std::vector<QVector>& rows, const QVector& v) {
  if (rows.empty()) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
  }
  QMatrix m = QMatrix::from_rows(rows);
  std::size_t r0 = rank(m);
  m.append_row(v);
  return rank(m) == r0;
}

}  // namespace rank2
