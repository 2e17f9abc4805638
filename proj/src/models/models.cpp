#include "rank2/models/models.hpp"

#include <map>

#include "rank2/error.hpp"
#include "rank2/exact/span.hpp"

namespace rank2 {

namespace {

RatFunc constant(const Chart& c, long v) { return RatFunc(Poly(c.ring(), Rational(v))); }
RatFunc var(const Chart& c, std::size_t i) { return RatFunc::variable(c.ring(), i); }

std::vector<std::string> jet_names(std::size_t k) {
  std::vector<std::string> names{"x"};
  for (std::size_t i = 0; i <= k; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

// d/dx + sum_{i<k} y_{i+1} d/dy_i on (x, y0, ..., yk, ...): the total derivative part.
std::vector<RatFunc> total_derivative(const Chart& c, std::size_t k) {
  std::vector<RatFunc> comps(c.dim(), constant(c, 0));
  comps[0] = constant(c, 1);
  for (std::size_t i = 0; i < k; ++i) comps[1 + i] = var(c, 2 + i);
  return comps;
}

}  // namespace

Distribution monge_model(std::size_t n) {
  if (n < 5) throw PreconditionError("the Monge model needs n >= 5");
  const std::size_t k = n - 3;  // highest jet index
  auto names = jet_names(k);
  names.push_back("z");
  Chart c(names);
  auto x1 = total_derivative(c, k);
  x1[n - 1] = var(c, 1 + k) * var(c, 1 + k);
  return Distribution(c, {VectorField(c, std::move(x1)), VectorField::coordinate(c, 1 + k)});
}

std::vector<OneForm> monge_pfaffian_forms(std::size_t n) {
  Distribution d = monge_model(n);
  const Chart& c = d.chart();
  const std::size_t k = n - 3;
  std::vector<OneForm> out;
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back(OneForm::coordinate(c, 1 + i) - var(c, 2 + i) * OneForm::coordinate(c, 0));
  }
  out.push_back(OneForm::coordinate(c, n - 1) - var(c, 1 + k) * var(c, 1 + k) * OneForm::coordinate(c, 0));
  return out;
}

Distribution cartan_jet(std::size_t k) {
  if (k < 1) throw PreconditionError("the jet order must be at least 1");
  Chart c(jet_names(k));
  return Distribution(c, {VectorField(c, total_derivative(c, k)), VectorField::coordinate(c, 1 + k)});
}

Distribution prolong(const Distribution& d) {
  if (d.rank() != 2) throw PreconditionError("prolongation needs a rank-2 distribution");
  std::vector<std::string> names = d.chart().coords();
  std::string fresh = "u";
  for (int i = 2; d.chart().ring()->index_of(fresh); ++i) fresh = "u" + std::to_string(i);
  names.push_back(fresh);
  Chart c(names);
  std::vector<std::size_t> map(d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) map[i] = i;
  auto lift = [&](const VectorField& x) {
    std::vector<RatFunc> comps;
    for (const auto& f : x.components()) comps.push_back(f.remap(c.ring(), map));
    comps.push_back(constant(c, 0));
    return VectorField(c, std::move(comps));
  };
  const std::size_t u = d.dim();
  VectorField y1 = lift(d[0]) + var(c, u) * lift(d[1]);
  return Distribution(c, {std::move(y1), VectorField::coordinate(c, u)});
}

std::string to_string(Terminal t) { return t == Terminal::cube5 ? "cube5" : "engel"; }

// ------------------------------------------------------------ deprolongation

namespace {

std::vector<std::size_t> minus(std::vector<std::size_t> v, std::size_t s) {
  for (auto& x : v) x -= s;
  return v;
}

// Greedy subset of `fields` that is independent at q.
std::vector<VectorField> pointwise_basis(const std::vector<VectorField>& fields,
                                         std::span<const Rational> q, std::size_t dim) {
  QSpan span(dim);
  std::vector<VectorField> out;
  for (const auto& f : fields) {
    if (span.add(f.eval(q))) out.push_back(f);
  }
  return out;
}

// Gauss-Jordan over the function field; returns the nonzero reduced rows.
std::vector<FVector> function_rref(std::vector<FVector> rows) {
  if (rows.empty()) return rows;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const RatFunc inv = RatFunc(1L) / rows[r][c];
    for (auto& e : rows[r]) e *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      const RatFunc f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

bool involves(const RatFunc& f, std::size_t var) { return f.num().involves(var) || f.den().involves(var); }

void require_cube_four(const Distribution& d, std::span<const Rational> q, std::size_t samples,
                       std::uint64_t seed) {
  std::vector<Point> points{Point(q.begin(), q.end())};
  for (auto& p : sample_points_near(d, q, samples, seed)) points.push_back(std::move(p));
  for (const auto& p : points) {
    std::size_t cube = cube_dim(d, p);
    if (cube != 4) {
      throw PreconditionError("deprolongation needs a 4-dimensional cube; found " + std::to_string(cube) +
                              " at " + to_string(p));
    }
  }
}

// Tier 1: rectify the characteristic Z by y_i = x_i - c_i x_j and quotient.
void rectify(const Distribution& d, const std::vector<VectorField>& square, const VectorField& z_field,
             std::span<const Rational> q, Deprolongation& out) {
  const Chart& chart = d.chart();
  const std::size_t n = d.dim();
  std::vector<RatFunc> c = z_field.components();
  std::optional<std::size_t> j;
  for (std::size_t i = 0; i < n && !j; ++i) {
    if (!c[i].is_zero() && c[i].is_constant()) j = i;
  }
  if (!j) {
    out.note = "not rectified: the characteristic field has no constant component";
    return;
  }
  const RatFunc scale = RatFunc(1L) / c[*j];
  for (auto& e : c) e *= scale;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == *j || c[i].is_zero()) continue;
    bool ok = c[i].is_polynomial() && !involves(c[i], *j);
    for (std::size_t k = 0; k < n && ok; ++k) {
      if (k != *j && !c[k].is_zero() && involves(c[i], k)) ok = false;
    }
    if (!ok) {
      out.note = "not rectified: the characteristic field is not triangular";
      return;
    }
  }
  // x_i = y_i + c_i(y) y_j; c_i only involves coordinates fixed by the change.
  std::vector<Poly> inverse;
  for (std::size_t i = 0; i < n; ++i) {
    Poly xi = Poly::variable(chart.ring(), i);
    if (i != *j && !c[i].is_zero()) xi += c[i].num() * Poly::variable(chart.ring(), *j);
    inverse.push_back(std::move(xi));
  }
  auto push = [&](const VectorField& v) {
    std::vector<RatFunc> comps;
    for (std::size_t i = 0; i < n; ++i) {
      RatFunc yi = v[i];
      if (i != *j && !c[i].is_zero()) {
        yi -= v.apply(c[i]) * var(chart, *j) + c[i] * v[*j];
      }
      comps.push_back(yi.substitute(inverse));
    }
    return comps;
  };
  std::vector<FVector> rows;
  for (const auto& v : square) {
    FVector comps = push(v);
    comps.erase(comps.begin() + std::ptrdiff_t(*j));
    rows.push_back(std::move(comps));
  }
  rows = function_rref(std::move(rows));
  if (rows.size() != 2) {
    out.note = "not rectified: the quotient of D^2 does not have rank 2";
    return;
  }
  for (const auto& r : rows) {
    for (const auto& e : r) {
      if (involves(e, *j)) {
        out.note = "not rectified: the quotient frame depends on the characteristic coordinate";
        return;
      }
    }
  }
  std::vector<std::string> names;
  std::vector<std::size_t> index_map(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == *j) continue;
    index_map[i] = names.size();
    names.push_back(chart.coords()[i]);
  }
  Chart target(names);
  std::vector<VectorField> frame;
  for (const auto& r : rows) {
    std::vector<RatFunc> comps;
    for (const auto& e : r) comps.push_back(e.remap(target.ring(), index_map));
    frame.emplace_back(target, std::move(comps));
  }
  Point image;
  {
    // y(q): y_i = q_i - c_i(q) q_j
    for (std::size_t i = 0; i < n; ++i) {
      if (i == *j) continue;
      Rational yi = q[i];
      if (!c[i].is_zero()) yi -= c[i].eval(q) * q[*j];
      image.push_back(yi);
    }
  }
  Distribution model(target, std::move(frame));
  try {
    model.check_point(image);
  } catch (const Error& e) {
    out.note = std::string("not rectified: quotient frame is singular at the image point: ") + e.what();
    return;
  }
  out.rectified = true;
  out.model = std::move(model);
  out.point = std::move(image);
  out.note = "rectified along coordinate " + chart.coords()[*j];
}

}  // namespace

Deprolongation deprolong(const Distribution& d, std::span<const Rational> q, std::size_t samples,
                         std::uint64_t seed) {
  if (d.rank() != 2) throw PreconditionError("deprolongation needs a rank-2 distribution");
  require_cube_four(d, q, samples, seed);
  const Chart& chart = d.chart();
  const std::size_t n = d.dim();
  std::vector<VectorField> square = square_frame(d);
  std::vector<OneForm> eta = annihilator_basis(chart, square);
  const VectorField x4 = lie_bracket(square[0], square[2]);
  const VectorField x5 = lie_bracket(square[1], square[2]);
  // Z = a X1 + b X2 is characteristic for D^2 iff a X4 + b X5 lies in D^2.
  FMatrix m(eta.size(), 2);
  for (std::size_t i = 0; i < eta.size(); ++i) {
    m(i, 0) = pair(eta[i], x4);
    m(i, 1) = pair(eta[i], x5);
  }
  RankNullspace<RatFunc> rn = rank_nullspace(m);
  if (rn.nullspace.size() != 1) {
    throw PreconditionError("D^2 has no Cauchy characteristic line inside D");
  }
  const VectorField z = rn.nullspace[0][0] * square[0] + rn.nullspace[0][1] * square[1];
  if (z.has_pole_at(q) || [&] {
        for (const auto& v : z.eval(q))
          if (sgn(v) != 0) return false;
        return true;
      }()) {
    throw PreconditionError("the Cauchy characteristic vanishes at " + to_string(q));
  }
  Deprolongation out;
  Distribution sq(chart, square);
  out.growth = minus(weak_flag(sq, q, 2 * n).dims, 1);
  out.cube = out.growth.size() >= 3 ? out.growth[2] : out.growth.back();
  rectify(d, square, z, q, out);
  return out;
}

DeprolongationDegree deprolongation_degree(const Distribution& d, std::span<const Rational> q,
                                           std::size_t cap, std::size_t samples, std::uint64_t seed) {
  if (d.rank() != 2) throw PreconditionError("deprolongation degree needs a rank-2 distribution");
  const std::size_t n = d.dim();
  EquiregularVerdict eq = equiregular_check(d, q, samples, seed);
  if (!eq.equiregular) throw PreconditionError("growth vector jumps near " + to_string(q) + "; point is not generic");
  if (eq.growth.front().back() != n) throw PreconditionError("distribution is not bracket generating");
  DeprolongationDegree out;
  // E_s = D^[s+1] (strong derived flag) lifts the s-th deprolongation; a local
  // frame of E_{s+1} is a pointwise basis of E_s together with its brackets.
  std::vector<VectorField> e = d.frame();
  for (std::size_t s = 0;; ++s) {
    if (s > cap) throw PreconditionError("deprolongation degree exceeds the cap " + std::to_string(cap));
    Distribution es(d.chart(), e);
    std::vector<std::size_t> growth = minus(weak_flag(es, q, 2 * n).dims, s);
    out.growth.push_back(growth);
    const std::size_t cube = growth.size() >= 3 ? growth[2] : growth.back();
    const std::size_t ambient = n - s;
    if (cube == 5) {
      out.degree = s;
      out.terminal = Terminal::cube5;
      return out;
    }
    if (ambient == 4 && growth == std::vector<std::size_t>{2, 3, 4}) {
      out.degree = s;
      out.terminal = Terminal::engel;
      return out;
    }
    if (cube != 4) {
      throw PreconditionError("deprolongation chain reached cube " + std::to_string(cube) + " in dimension " +
                              std::to_string(ambient));
    }
    std::vector<VectorField> candidates = e;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t k = i + 1; k < e.size(); ++k) candidates.push_back(lie_bracket(e[i], e[k]));
    e = pointwise_basis(candidates, q, n);
    if (e.size() != s + 3) throw PreconditionError("strong derived flag is not regular at " + to_string(q));
  }
}

// ------------------------------------------------------------ symbols

namespace {

using NcPoly = std::map<std::string, Rational>;  // words in letters '1', '2'

NcPoly commutator(const NcPoly& a, const NcPoly& b) {
  NcPoly out;
  for (const auto& [u, cu] : a) {
    for (const auto& [v, cv] : b) {
      out[u + v] += cu * cv;
      out[v + u] -= cu * cv;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

bool is_lyndon(const std::string& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!(w < w.substr(i))) return false;
  }
  return true;
}

struct LyndonElement {
  std::string word;
  std::string label;
  NcPoly poly;
};

}  // namespace

GradedSymbol free_nilpotent_symbol(int step) {
  if (step < 1) throw PreconditionError("step must be positive");
  std::map<std::string, LyndonElement> by_word;
  std::vector<std::string> order;
  std::vector<std::string> level{""};
  for (int len = 1; len <= step; ++len) {
    std::vector<std::string> words;
    for (const auto& w : level) {
      words.push_back(w + "1");
      words.push_back(w + "2");
    }
    level = words;
    for (const auto& w : words) {
      if (!is_lyndon(w)) continue;
      LyndonElement e;
      e.word = w;
      if (len == 1) {
        e.label = w;
        e.poly[w] = 1;
      } else {
        // Standard factorization: v is the longest proper Lyndon suffix.
        std::size_t split = 1;
        while (!is_lyndon(w.substr(split))) ++split;
        const auto& u = by_word.at(w.substr(0, split));
        const auto& v = by_word.at(w.substr(split));
        e.label = "[" + u.label + "," + v.label + "]";
        e.poly = commutator(u.poly, v.poly);
      }
      by_word.emplace(w, e);
      order.push_back(w);
    }
  }
  GradedSymbol m;
  const std::size_t n = order.size();
  for (const auto& w : order) {
    m.weights.push_back(int(w.size()));
    m.labels.push_back(by_word.at(w).label);
  }
  m.brackets.assign(n, std::vector<QVector>(n, QVector(n, Rational(0))));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const int w = m.weights[a] + m.weights[b];
      if (w > step) continue;
      NcPoly target = commutator(by_word.at(order[a]).poly, by_word.at(order[b]).poly);
      // Express in the basis elements of weight w (columns) over words (rows).
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < n; ++c)
        if (m.weights[c] == w) cols.push_back(c);
      std::map<std::string, std::size_t> rows;
      for (std::size_t c : cols)
        for (const auto& [word, coeff] : by_word.at(order[c]).poly) rows.emplace(word, rows.size());
      for (const auto& [word, coeff] : target) rows.emplace(word, rows.size());
      QMatrix sys(rows.size(), cols.size());
      QVector rhs(rows.size(), Rational(0));
      for (std::size_t k = 0; k < cols.size(); ++k)
        for (const auto& [word, coeff] : by_word.at(order[cols[k]]).poly) sys(rows.at(word), k) = coeff;
      for (const auto& [word, coeff] : target) rhs[rows.at(word)] = coeff;
      QVector x = solve(sys, rhs);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        m.brackets[a][b][cols[k]] = x[k];
        m.brackets[b][a][cols[k]] = -x[k];
      }
    }
  }
  return m;
}

Distribution flat_from_symbol(const GradedSymbol& m) {
  validate(m);
  const std::size_t n = m.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
  Chart c(names);
  // Coefficients of t / (1 - e^{-t}) = sum B_k^+ t^k / k!.
  const int depth = m.depth();
  std::vector<Rational> bern(std::size_t(depth) + 1, Rational(0));
  bern[0] = 1;
  for (int k = 1; k <= depth; ++k) {
    // sum_{j=0}^{k} C(k+1, j) B_j = 0 with B_1 = -1/2 convention.
    Rational s = 0;
    Integer binom = 1;  // C(k+1, 0)
    for (int j = 0; j < k; ++j) {
      s += Rational(binom) * bern[std::size_t(j)];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    bern[std::size_t(k)] = -s / Rational(binom);
  }
  std::vector<Rational> coeff(bern.size());
  Integer fact = 1;
  for (std::size_t k = 0; k < bern.size(); ++k) {
    if (k > 0) fact *= Integer(long(k));
    Rational b = k == 1 ? -bern[1] : bern[k];
    coeff[k] = b / Rational(fact);
  }
  using PolyVec = std::vector<Poly>;
  auto ad_x = [&](const PolyVec& v) {
    PolyVec out(n, Poly(c.ring()));
    for (std::size_t a = 0; a < n; ++a) {
      const Poly xa = Poly::variable(c.ring(), a);
      for (std::size_t b = 0; b < n; ++b) {
        if (v[b].is_zero() || a == b) continue;
        const Poly t = xa * v[b];
        for (std::size_t k = 0; k < n; ++k) {
          if (sgn(m.brackets[a][b][k]) != 0) out[k] += t * m.brackets[a][b][k];
        }
      }
    }
    return out;
  };
  std::vector<VectorField> frame;
  for (std::size_t a = 0; a < n && m.weights[a] == 1; ++a) {
    PolyVec term(n, Poly(c.ring()));
    term[a] = Poly(c.ring(), Rational(1));
    PolyVec total = term;
    for (int k = 1; k < depth; ++k) {
      term = ad_x(term);
      for (std::size_t i = 0; i < n; ++i) total[i] += term[i] * coeff[std::size_t(k)];
    }
    std::vector<RatFunc> comps;
    for (auto& p : total) comps.emplace_back(std::move(p));
    frame.emplace_back(c, std::move(comps));
  }
  return Distribution(c, std::move(frame));
}

}  // namespace rank2
