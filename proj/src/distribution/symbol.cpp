#include "rank2/distribution/symbol.hpp"

#include <sstream>

#include "rank2/error.hpp"
#include "rank2/exact/span.hpp"

namespace rank2 {

namespace {

bool is_zero(const QVector& v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

QVector unit(std::size_t n, std::size_t i) {
  QVector v(n, Rational(0));
  v[i] = 1;
  return v;
}

QVector axpy(QVector y, const Rational& a, const QVector& x) {
  if (sgn(a) == 0) return y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (sgn(x[i]) != 0) y[i] += a * x[i];
  }
  return y;
}

std::string word_label(const std::string& head, const std::string& tail) {
  return "[" + head + "," + tail + "]";
}

// Greedy left-normed word basis inside an algebra. `bracket_with_generator`
// returns [g_a, v] for a generator index and a vector. Returns per-level
// vectors, their labels, and stops when the span stops growing.
struct WordBasis {
  std::vector<QVector> vectors;
  std::vector<int> weights;
  std::vector<std::string> labels;
};

template <typename Bracket>
WordBasis left_normed_basis(const std::vector<QVector>& generators,
                            const std::vector<std::string>& generator_labels, std::size_t dim,
                            Bracket&& bracket_with_generator) {
  WordBasis out;
  QSpan span(dim);
  std::vector<std::size_t> level;
  for (std::size_t a = 0; a < generators.size(); ++a) {
    if (!span.add(generators[a])) throw PreconditionError("weight-1 generators are dependent");
    out.vectors.push_back(generators[a]);
    out.weights.push_back(1);
    out.labels.push_back(generator_labels[a]);
    level.push_back(out.vectors.size() - 1);
  }
  for (int w = 2; !level.empty() && span.rank() < dim; ++w) {
    std::vector<std::size_t> next;
    for (std::size_t a = 0; a < generators.size(); ++a) {
      for (std::size_t idx : level) {
        QVector v = bracket_with_generator(a, out.vectors[idx]);
        if (!span.add(v)) continue;
        out.vectors.push_back(std::move(v));
        out.weights.push_back(w);
        out.labels.push_back(word_label(generator_labels[a], out.labels[idx]));
        next.push_back(out.vectors.size() - 1);
      }
    }
    level = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> GradedSymbol::dims() const {
  std::vector<std::size_t> out(std::size_t(depth()), 0);
  for (int w : weights) ++out[std::size_t(w - 1)];
  return out;
}

QVector GradedSymbol::bracket(const QVector& u, const QVector& v) const {
  QVector out(size(), Rational(0));
  for (std::size_t a = 0; a < size(); ++a) {
    if (sgn(u[a]) == 0) continue;
    for (std::size_t b = 0; b < size(); ++b) {
      if (sgn(v[b]) == 0 || a == b) continue;
      out = axpy(std::move(out), u[a] * v[b], brackets[a][b]);
    }
  }
  return out;
}

std::optional<std::string> symbol_violation(const GradedSymbol& m) {
  const std::size_t n = m.size();
  if (n == 0) return "empty symbol";
  if (m.labels.size() != n || m.brackets.size() != n) return "inconsistent basis sizes";
  for (std::size_t a = 0; a < n; ++a) {
    if (m.weights[a] < 1) return "weights must be positive";
    if (a > 0 && m.weights[a] < m.weights[a - 1]) return "basis is not sorted by weight";
    if (a > 0 && m.weights[a] > m.weights[a - 1] + 1) return "a graded component is empty";
    if (m.brackets[a].size() != n) return "inconsistent bracket table";
    for (const auto& v : m.brackets[a]) {
      if (v.size() != n) return "inconsistent bracket vector length";
    }
  }
  if (m.weights.front() != 1) return "no weight-1 component";
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      QVector sum = m.brackets[a][b];
      for (std::size_t c = 0; c < n; ++c) sum[c] += m.brackets[b][a][c];
      if (!is_zero(sum)) return "bracket is not antisymmetric at (" + m.labels[a] + ", " + m.labels[b] + ")";
      for (std::size_t c = 0; c < n; ++c) {
        if (sgn(m.brackets[a][b][c]) != 0 && m.weights[c] != m.weights[a] + m.weights[b]) {
          return "bracket does not respect the grading at (" + m.labels[a] + ", " + m.labels[b] + ")";
        }
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        // [[a,b],c] + [[b,c],a] + [[c,a],b]
        QVector j = m.bracket(m.brackets[a][b], unit(n, c));
        j = axpy(std::move(j), 1, m.bracket(m.brackets[b][c], unit(n, a)));
        j = axpy(std::move(j), 1, m.bracket(m.brackets[c][a], unit(n, b)));
        if (!is_zero(j)) {
          return "Jacobi identity fails at (" + m.labels[a] + ", " + m.labels[b] + ", " + m.labels[c] + ")";
        }
      }
    }
  }
  std::vector<QVector> gens;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n && m.weights[a] == 1; ++a) {
    gens.push_back(unit(n, a));
    names.push_back(m.labels[a]);
  }
  WordBasis words = left_normed_basis(gens, names, n, [&](std::size_t a, const QVector& v) {
    return m.bracket(gens[a], v);
  });
  if (words.vectors.size() != n) return "weight-1 component does not generate the algebra";
  return std::nullopt;
}

void validate(const GradedSymbol& m) {
  if (auto why = symbol_violation(m)) throw PreconditionError("invalid graded symbol: " + *why);
}

namespace {

// Structure constants of the basis P (columns given as vectors with weights)
// in an algebra whose bracket is `br`, keeping only the graded component.
template <typename Bracket>
GradedSymbol rebase(const WordBasis& words, Bracket&& br) {
  const std::size_t n = words.vectors.size();
  QMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) p(i, j) = words.vectors[j][i];
  GradedSymbol out;
  out.weights = words.weights;
  out.labels = words.labels;
  out.brackets.assign(n, std::vector<QVector>(n, QVector(n, Rational(0))));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const int w = words.weights[a] + words.weights[b];
      if (w > words.weights.back()) continue;
      QVector coords = solve(p, br(a, b));
      for (std::size_t c = 0; c < n; ++c) {
        if (words.weights[c] != w) coords[c] = 0;
      }
      out.brackets[b][a] = coords;
      for (auto& x : out.brackets[b][a]) x = -x;
      out.brackets[a][b] = std::move(coords);
    }
  }
  return out;
}

}  // namespace

GradedSymbol canonicalize(const GradedSymbol& m) {
  const std::size_t n = m.size();
  std::vector<QVector> gens;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < n && m.weights[a] == 1; ++a) {
    gens.push_back(unit(n, a));
    names.push_back("X" + std::to_string(a + 1));
  }
  WordBasis words = left_normed_basis(gens, names, n, [&](std::size_t a, const QVector& v) {
    return m.bracket(gens[a], v);
  });
  if (words.vectors.size() != n) {
    throw PreconditionError("weight-1 component does not generate the algebra");
  }
  return rebase(words, [&](std::size_t a, std::size_t b) {
    return m.bracket(words.vectors[a], words.vectors[b]);
  });
}

GradedSymbol tanaka_symbol(const Distribution& d, std::span<const Rational> q, std::size_t samples,
                           std::uint64_t seed) {
  EquiregularVerdict verdict = equiregular_check(d, q, samples, seed);
  if (!verdict.equiregular) {
    throw PreconditionError("growth vector is not constant on the sampled neighborhood of " + to_string(q));
  }
  const std::size_t n = d.dim();
  // Bracket words are built as fields; their values at q are the algebra
  // vectors. Field brackets are memoized along the greedy walk.
  std::vector<VectorField> fields;
  std::vector<QVector> gens;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < d.rank(); ++a) {
    fields.push_back(d[a]);
    gens.push_back(d[a].eval(q));
    names.push_back("X" + std::to_string(a + 1));
  }
  // Values must be matched back to fields, so walk the words explicitly here.
  WordBasis words;
  std::vector<VectorField> word_fields;
  {
    QSpan span(n);
    std::vector<std::size_t> level;
    for (std::size_t a = 0; a < gens.size(); ++a) {
      span.add(gens[a]);
      words.vectors.push_back(gens[a]);
      words.weights.push_back(1);
      words.labels.push_back(names[a]);
      word_fields.push_back(fields[a]);
      level.push_back(a);
    }
    for (int w = 2; !level.empty() && span.rank() < n; ++w) {
      std::vector<std::size_t> next;
      for (std::size_t a = 0; a < gens.size(); ++a) {
        for (std::size_t idx : level) {
          VectorField f = lie_bracket(fields[a], word_fields[idx]);
          QVector v = f.eval(q);
          if (!span.add(v)) continue;
          words.vectors.push_back(std::move(v));
          words.weights.push_back(w);
          words.labels.push_back(word_label(names[a], words.labels[idx]));
          word_fields.push_back(std::move(f));
          next.push_back(words.vectors.size() - 1);
        }
      }
      level = std::move(next);
    }
    if (span.rank() < n) throw PreconditionError("distribution is not bracket generating at " + to_string(q));
  }
  return rebase(words, [&](std::size_t a, std::size_t b) {
    return lie_bracket(word_fields[a], word_fields[b]).eval(q);
  });
}

std::string to_string(const GradedSymbol& m) {
  std::ostringstream os;
  os << "graded symbol, dims (";
  auto dims = m.dims();
  for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
  os << ")\n";
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      if (is_zero(m.brackets[a][b])) continue;
      os << "  [" << m.labels[a] << ", " << m.labels[b] << "] =";
      for (std::size_t c = 0; c < m.size(); ++c) {
        if (sgn(m.brackets[a][b][c]) == 0) continue;
        os << " " << (sgn(m.brackets[a][b][c]) > 0 ? "+" : "") << to_string(m.brackets[a][b][c]) << "*"
           << m.labels[c];
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace rank2
