#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "rank2/symplectic/symplectic.hpp"

namespace rank2 {

enum class TrajectoryStatus { ok, residual_exceeded, boundary };
std::string to_string(TrajectoryStatus s);

// Numeric integral curve of the characteristic field, sampled at every step.
struct Trajectory {
  std::size_t n = 0;  // base dimension; states have 2n entries
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<std::array<double, 3>> residuals;  // |h1|, |h2|, |h3|
  double max_residual = 0;
  TrajectoryStatus status = TrajectoryStatus::ok;
};

struct IntegrationOptions {
  // Integration stops when max |h_i| exceeds this.
  double drift_tolerance = 1e-6;
  // Integration stops when |h4| + |h5| falls below floor * its initial value.
  double floor = 1e-10;
};

// Fixed-step RK4 on X_C with exact coefficients evaluated in floating point.
// T may be negative; T = 0 or steps = 0 gives the single initial state.
Trajectory integrate_char(ConeFlag& flag, const CovectorSample& start, double T, std::size_t steps,
                          const IntegrationOptions& options = {});
// Continues from a floating-point state, e.g. the endpoint of a previous run.
Trajectory integrate_char(ConeFlag& flag, std::vector<double> state, double T, std::size_t steps,
                          const IntegrationOptions& options = {});

struct FloatRank {
  std::size_t rank = 0;
  bool marginal = false;  // some singular value within 10x of the threshold
};

// Rank with singular values below threshold * (largest) counted as zero;
// rows are normalized first.
FloatRank float_rank(const std::vector<std::vector<double>>& rows, double threshold = 1e-8);

// Corank bound n - 2 - nu at an endpoint of class nu; corank >= 1 always, so
// nu = n - 3 pins the corank to 1.
struct CorankClaim {
  std::size_t bound = 0;
  bool corank_one = false;
};
CorankClaim corank_claim(std::size_t n, std::size_t nu);

struct NuReport {
  std::vector<std::size_t> indices;  // sampled state indices
  std::vector<std::size_t> nu;
  std::vector<bool> marginal;
  bool any_marginal = false;
  std::size_t exact_nu0 = 0;   // exact class at the rational initial state
  std::size_t corank_bound = 0;  // n - 2 - nu(endpoint)
  bool corank_one = false;       // nu(endpoint) = n - 3 forces corank = 1
};

// Float class along the trajectory at every `stride`-th state (and the
// endpoint); the exact anchor uses the rational initial sample.
NuReport nu_along(ConeFlag& flag, const Trajectory& traj, const CovectorSample& start, std::size_t stride = 1);

}  // namespace rank2
