#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rank2/distribution/distribution.hpp"
#include "rank2/exact/matrix.hpp"

namespace rank2 {

// Graded nilpotent Lie algebra g_{-1} + ... + g_{-depth}. Basis elements are
// sorted by weight (weight w means degree -w); bracket(a, b) is the coordinate
// vector of [e_a, e_b].
struct GradedSymbol {
  std::vector<int> weights;
  std::vector<std::string> labels;
  std::vector<std::vector<QVector>> brackets;

  std::size_t size() const noexcept { return weights.size(); }
  int depth() const noexcept { return weights.empty() ? 0 : weights.back(); }
  // (dim g_{-1}, ..., dim g_{-depth}).
  std::vector<std::size_t> dims() const;
  const QVector& bracket(std::size_t a, std::size_t b) const { return brackets[a][b]; }
  QVector bracket(const QVector& u, const QVector& v) const;

  friend bool operator==(const GradedSymbol& a, const GradedSymbol& b) {
    return a.weights == b.weights && a.brackets == b.brackets;
  }
};

// Empty when the symbol is a valid graded nilpotent Lie algebra generated by
// its weight-1 part; otherwise a description of the first violated property.
std::optional<std::string> symbol_violation(const GradedSymbol& m);
// Throws PreconditionError on the first violation.
void validate(const GradedSymbol& m);

// Rewrites m in the basis of left-normed words [e_a, w] (a over the weight-1
// basis in order, w over the previous level's basis in order), keeping each
// word that is independent of the words kept before it.
GradedSymbol canonicalize(const GradedSymbol& m);

// Tanaka symbol of D at q in the canonical word basis. Requires equiregular
// growth on the sampled neighborhood and bracket generation within the chart
// dimension; throws PreconditionError otherwise.
GradedSymbol tanaka_symbol(const Distribution& d, std::span<const Rational> q,
                           std::size_t samples = 3, std::uint64_t seed = 1);

std::string to_string(const GradedSymbol& m);

}  // namespace rank2
