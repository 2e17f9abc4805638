#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rank2/distribution/distribution.hpp"

namespace rank2 {

// Polynomial infinitesimal symmetries Y of D with deg Y^i <= degree:
// <eta_j, [Y, X_a]> = 0 for the annihilator forms eta_j and frame fields X_a.
struct SymmetryBasis {
  std::size_t degree = 0;
  std::vector<VectorField> basis;
  std::size_t dim = 0;
  std::size_t previous_dim = 0;  // dimension at degree - 1 (0 when degree = 0)
  bool stabilized = false;       // dim equals previous_dim (degree >= 1)
  // Defining data, kept so that the equations can be re-checked.
  std::vector<VectorField> frame;
  std::vector<OneForm> forms;
};

// Requires a polynomial frame; throws PreconditionError when the annihilator
// basis is degenerate (wrong generic rank).
SymmetryBasis symmetry_basis(const Distribution& d, std::size_t degree);

// Does Y satisfy the symmetry equations of the basis' distribution exactly?
bool is_symmetry(const SymmetryBasis& b, const VectorField& y);

// Every bracket [Y_i, Y_j] satisfies the symmetry equations.
bool bracket_close_check(const SymmetryBasis& b);

// Structure of the solved algebra: the kernel k of its Killing form contains
// the nilradical; for the Monge models with n > 5 it is the Heisenberg ideal.
struct NilradicalWitness {
  bool closed = false;  // brackets stay inside the span (structure constants exist)
  std::size_t killing_kernel_dim = 0;
  std::size_t derived_dim = 0;  // dim [k, k]
  bool derived_central = false; // [k, [k, k]] = 0
  bool heisenberg = false;      // dim [k,k] = 1, central, nondegenerate on k / [k,k]
  std::size_t vanishing_dim = 0;  // basis fields vanishing at the point (isotropy)
};

NilradicalWitness nilradical_witness(const SymmetryBasis& b, std::span<const Rational> point);

}  // namespace rank2
