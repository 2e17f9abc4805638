#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rank2/distribution/distribution.hpp"
#include "rank2/distribution/symbol.hpp"

namespace rank2 {

// Flat Monge model on (x, y0, ..., y_{n-3}, z):
//   X1 = d/dx + sum_{i<n-3} y_{i+1} d/dy_i + y_{n-3}^2 d/dz,  X2 = d/dy_{n-3}.
// Throws PreconditionError for n < 5.
Distribution monge_model(std::size_t n);
// The n-2 Pfaffian forms dy_i - y_{i+1} dx and dz - y_{n-3}^2 dx cutting out
// the Monge model.
std::vector<OneForm> monge_pfaffian_forms(std::size_t n);

// Cartan distribution on J^k(R, R) with coordinates (x, y0, ..., yk).
Distribution cartan_jet(std::size_t k);

// Cartan prolongation in the affine fiber chart: frame {X1 + u X2, d/du} on
// the chart extended by a fresh coordinate u.
Distribution prolong(const Distribution& d);

// Outcome of one deprolongation step.
struct Deprolongation {
  // Tier 1: the quotient distribution on the rectified chart (one coordinate
  // fewer) together with the image of q.
  bool rectified = false;
  std::optional<Distribution> model;
  Point point;
  std::string note;
  // Tier 2 invariants of the deprolonged germ, always filled.
  std::vector<std::size_t> growth;
  std::size_t cube = 0;
};

// Requires dim D^3 = 4 at q and at nearby samples; throws PreconditionError
// otherwise, or when the Cauchy characteristic of D^2 vanishes at q.
Deprolongation deprolong(const Distribution& d, std::span<const Rational> q, std::size_t samples = 2,
                         std::uint64_t seed = 1);

enum class Terminal { cube5, engel };

struct DeprolongationDegree {
  std::size_t degree = 0;
  Terminal terminal = Terminal::cube5;
  // growth[s] is the small growth vector of the s-th deprolongation.
  std::vector<std::vector<std::size_t>> growth;
};

// Iterates deprolongation (on invariants of the strong derived flag) until the
// cube is 5-dimensional or the Engel model is reached.
DeprolongationDegree deprolongation_degree(const Distribution& d, std::span<const Rational> q,
                                           std::size_t cap, std::size_t samples = 2,
                                           std::uint64_t seed = 1);

std::string to_string(Terminal t);

// Free 2-generator nilpotent Lie algebra of the given step in the Lyndon
// (Hall) basis, generators "1" and "2".
GradedSymbol free_nilpotent_symbol(int step);

// Left-invariant distribution of the weight-1 part of m on the simply
// connected group, in exponential coordinates x1..xN (identity at 0).
// Throws PreconditionError for invalid symbols.
Distribution flat_from_symbol(const GradedSymbol& m);

}  // namespace rank2
