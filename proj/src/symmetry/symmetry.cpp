#include "rank2/symmetry/symmetry.hpp"

#include <map>
#include <numeric>
#include <tuple>

#include "rank2/error.hpp"
#include "rank2/exact/span.hpp"

namespace rank2 {

namespace {

void monomials_up_to(std::size_t nvars, std::size_t degree, std::size_t var, Monomial& current,
                     std::vector<Monomial>& out) {
  if (var == nvars) {
    out.push_back(current);
    return;
  }
  for (std::size_t e = 0; current.degree + e <= degree; ++e) {
    current.exp[var] = std::uint8_t(e);
    current.degree = std::uint16_t(current.degree + e);
    monomials_up_to(nvars, degree, var + 1, current, out);
    current.degree = std::uint16_t(current.degree - e);
  }
  current.exp[var] = 0;
}

struct EquationKey {
  std::size_t form, field;
  Monomial mono;
};

struct EquationLess {
  bool operator()(const EquationKey& a, const EquationKey& b) const {
    if (a.form != b.form) return a.form < b.form;
    if (a.field != b.field) return a.field < b.field;
    return compare_grlex(a.mono, b.mono) < 0;
  }
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// <eta, [Y, X]> for the polynomial field Y; polynomial result.
Poly defining_expression(const OneForm& eta, const VectorField& y, const VectorField& x) {
  RatFunc r = pair(eta, lie_bracket(y, x));
  return r.num();
}

std::vector<OneForm> polynomial_annihilator(const Distribution& d) {
  std::vector<OneForm> forms = annihilator_basis(d.chart(), d.frame());
  if (forms.size() != d.dim() - d.rank()) throw PreconditionError("annihilator basis is degenerate on the chart");
  return forms;
}

std::size_t solve_dim(const Distribution& d, const std::vector<OneForm>& forms, std::size_t degree,
                      std::vector<VectorField>* basis) {
  const Chart& chart = d.chart();
  const std::size_t n = d.dim();
  std::vector<Monomial> monos;
  Monomial m;
  monomials_up_to(n, degree, 0, m, monos);
  // Unknown u = i * monos.size() + k is the coefficient of monos[k] d/dx_i.
  const std::size_t unknowns = n * monos.size();
  std::map<EquationKey, std::size_t, EquationLess> eq_ids;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(unknowns);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < monos.size(); ++k) {
      const std::size_t u = i * monos.size() + k;
      const RatFunc coeff(Poly::monomial(chart.ring(), monos[k], Rational(1)));
      const VectorField y = coeff * VectorField::coordinate(chart, i);
      for (std::size_t j = 0; j < forms.size(); ++j) {
        for (std::size_t a = 0; a < d.rank(); ++a) {
          const Poly p = defining_expression(forms[j], y, d[a]);
          for (const auto& t : p.terms()) {
            auto [it, inserted] = eq_ids.try_emplace(EquationKey{j, a, t.mono}, eq_ids.size());
            (void)inserted;
            columns[u].emplace_back(it->second, t.coeff);
          }
        }
      }
    }
  }
  // Independent blocks: unknowns linked through shared equations.
  UnionFind uf(unknowns + eq_ids.size());
  for (std::size_t u = 0; u < unknowns; ++u)
    for (const auto& [e, c] : columns[u]) uf.unite(u, unknowns + e);
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t u = 0; u < unknowns; ++u) blocks[uf.find(u)].push_back(u);
  std::size_t dim = 0;
  for (const auto& [root, cols] : blocks) {
    std::map<std::size_t, std::size_t> rows;
    for (std::size_t u : cols)
      for (const auto& [e, c] : columns[u]) rows.emplace(e, rows.size());
    std::vector<QVector> kernel;
    if (rows.empty()) {
      for (std::size_t k = 0; k < cols.size(); ++k) {
        QVector v(cols.size(), Rational(0));
        v[k] = 1;
        kernel.push_back(std::move(v));
      }
    } else {
      QMatrix sys(rows.size(), cols.size());
      for (std::size_t k = 0; k < cols.size(); ++k)
        for (const auto& [e, c] : columns[cols[k]]) sys(rows.at(e), k) += c;
      kernel = rank_nullspace(sys).nullspace;
    }
    dim += kernel.size();
    if (!basis) continue;
    for (const auto& v : kernel) {
      std::vector<std::vector<Term>> comps(n);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (sgn(v[k]) == 0) continue;
        comps[cols[k] / monos.size()].push_back(Term{monos[cols[k] % monos.size()], v[k]});
      }
      std::vector<RatFunc> fc;
      for (auto& terms : comps) fc.emplace_back(Poly::from_terms(chart.ring(), std::move(terms)));
      basis->emplace_back(chart, std::move(fc));
    }
  }
  return dim;
}

}  // namespace

SymmetryBasis symmetry_basis(const Distribution& d, std::size_t degree) {
  if (!d.is_polynomial()) throw PreconditionError("the symmetry solver needs a polynomial frame");
  SymmetryBasis out;
  out.degree = degree;
  out.frame = d.frame();
  out.forms = polynomial_annihilator(d);
  out.dim = solve_dim(d, out.forms, degree, &out.basis);
  if (degree > 0) {
    out.previous_dim = solve_dim(d, out.forms, degree - 1, nullptr);
    out.stabilized = out.previous_dim == out.dim;
  }
  return out;
}

bool is_symmetry(const SymmetryBasis& b, const VectorField& y) {
  for (const auto& eta : b.forms)
    for (const auto& x : b.frame)
      if (!pair(eta, lie_bracket(y, x)).is_zero()) return false;
  return true;
}

bool bracket_close_check(const SymmetryBasis& b) {
  for (std::size_t i = 0; i < b.basis.size(); ++i) {
    if (!is_symmetry(b, b.basis[i])) return false;
    for (std::size_t j = i + 1; j < b.basis.size(); ++j) {
      if (!is_symmetry(b, lie_bracket(b.basis[i], b.basis[j]))) return false;
    }
  }
  return true;
}

namespace {

// Coefficient vectors of polynomial fields over a shared monomial index.
class FieldCoordinates {
 public:
  SparseVector operator()(const VectorField& y) {
    SparseVector v;
    for (std::size_t i = 0; i < y.dim(); ++i) {
      for (const auto& t : y[i].num().terms()) {
        auto [it, inserted] = ids_.try_emplace(std::make_pair(i, t.mono), ids_.size());
        (void)inserted;
        v[it->second] = t.coeff / y[i].den().leading().coeff;
      }
    }
    return v;
  }
  std::size_t size() const { return ids_.size(); }

 private:
  struct Less {
    bool operator()(const std::pair<std::size_t, Monomial>& a, const std::pair<std::size_t, Monomial>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return compare_grlex(a.second, b.second) < 0;
    }
  };
  std::map<std::pair<std::size_t, Monomial>, std::size_t, Less> ids_;
};

QVector dense(const SparseVector& v, std::size_t n) {
  QVector out(n, Rational(0));
  for (const auto& [k, c] : v) out[k] = c;
  return out;
}

}  // namespace

NilradicalWitness nilradical_witness(const SymmetryBasis& b, std::span<const Rational> point) {
  NilradicalWitness out;
  const std::size_t dim = b.basis.size();
  if (dim == 0) return out;
  {
    QSpan at_point(b.basis.front().dim());
    for (const auto& y : b.basis) at_point.add(y.eval(point));
    out.vanishing_dim = dim - at_point.rank();
  }
  FieldCoordinates coords;
  std::vector<SparseVector> basis_vecs;
  for (const auto& y : b.basis) basis_vecs.push_back(coords(y));
  std::vector<std::vector<SparseVector>> bracket_vecs(dim, std::vector<SparseVector>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i + 1; j < dim; ++j) bracket_vecs[i][j] = coords(lie_bracket(b.basis[i], b.basis[j]));
  const std::size_t keys = coords.size();
  QMatrix p(keys, dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (const auto& [k, c] : basis_vecs[a]) p(k, a) = c;
  // c[i][j] = coordinates of [Y_i, Y_j] in the basis.
  std::vector<std::vector<QVector>> c(dim, std::vector<QVector>(dim, QVector(dim, Rational(0))));
  try {
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i + 1; j < dim; ++j) {
        c[i][j] = solve(p, dense(bracket_vecs[i][j], keys));
        c[j][i] = c[i][j];
        for (auto& x : c[j][i]) x = -x;
      }
    }
  } catch (const SingularMatrix&) {
    return out;
  }
  out.closed = true;
  // ad_i as a matrix: (ad_i)(k, j) = c[i][j][k].
  std::vector<QMatrix> ad(dim, QMatrix(dim, dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) ad[i](k, j) = c[i][j][k];
  QMatrix killing(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      QMatrix prod = ad[i] * ad[j];
      Rational tr = 0;
      for (std::size_t k = 0; k < dim; ++k) tr += prod(k, k);
      killing(i, j) = killing(j, i) = tr;
    }
  }
  const std::vector<QVector> kernel = rank_nullspace(killing).nullspace;
  out.killing_kernel_dim = kernel.size();
  auto bracket = [&](const QVector& u, const QVector& v) {
    QVector r(dim, Rational(0));
    for (std::size_t i = 0; i < dim; ++i) {
      if (sgn(u[i]) == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (sgn(v[j]) == 0 || i == j) continue;
        for (std::size_t k = 0; k < dim; ++k) r[k] += u[i] * v[j] * c[i][j][k];
      }
    }
    return r;
  };
  QSpan derived(dim);
  std::vector<QVector> derived_vecs;
  for (std::size_t a = 0; a < kernel.size(); ++a)
    for (std::size_t bb = a + 1; bb < kernel.size(); ++bb) {
      QVector v = bracket(kernel[a], kernel[bb]);
      if (derived.add(v)) derived_vecs.push_back(v);
    }
  out.derived_dim = derived.rank();
  out.derived_central = true;
  for (const auto& z : derived_vecs)
    for (const auto& k : kernel) {
      QVector r = bracket(k, z);
      for (const auto& x : r) out.derived_central = out.derived_central && sgn(x) == 0;
    }
  if (out.derived_dim == 1 && out.derived_central) {
    // Pairing k x k -> [k, k] has rank dim k - 1 exactly when nondegenerate on k / z.
    const QVector& z = derived_vecs.front();
    std::size_t pivot = 0;
    while (sgn(z[pivot]) == 0) ++pivot;
    QMatrix form(kernel.size(), kernel.size());
    for (std::size_t a = 0; a < kernel.size(); ++a)
      for (std::size_t bb = 0; bb < kernel.size(); ++bb) form(a, bb) = bracket(kernel[a], kernel[bb])[pivot] / z[pivot];
    out.heisenberg = rank(form) + 1 == kernel.size();
  }
  return out;
}

}  // namespace rank2
