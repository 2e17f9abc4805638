#include "rank2/extremals/extremals.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rank2/error.hpp"

namespace rank2 {

std::string to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::ok:
      return "ok";
    case TrajectoryStatus::residual_exceeded:
      return "residual_exceeded";
    case TrajectoryStatus::boundary:
      return "boundary";
  }
  return "unknown";
}

namespace {

std::vector<double> to_doubles(const Point& p) {
  std::vector<double> out;
  for (const auto& x : p) out.push_back(to_double(x));
  return out;
}

std::vector<double> axpy(const std::vector<double>& y, double a, const std::vector<double>& x) {
  std::vector<double> out = y;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] += a * x[i];
  return out;
}

}  // namespace

Trajectory integrate_char(ConeFlag& flag, const CovectorSample& start, double T, std::size_t steps,
                          const IntegrationOptions& options) {
  flag.check_sample(start);
  return integrate_char(flag, to_doubles(start.lambda()), T, steps, options);
}

Trajectory integrate_char(ConeFlag& flag, std::vector<double> state, double T, std::size_t steps,
                          const IntegrationOptions& options) {
  const CharField& xc = flag.characteristic();
  Trajectory out;
  out.n = flag.distribution().dim();
  if (state.size() != 2 * out.n) throw Error("state has the wrong dimension");
  auto record = [&](double t, const std::vector<double>& s) {
    std::array<double, 3> r{};
    for (std::size_t k = 0; k < 3; ++k) r[k] = std::fabs(xc.h[k].eval(std::span<const double>(s)));
    out.times.push_back(t);
    out.states.push_back(s);
    out.residuals.push_back(r);
    out.max_residual = std::max({out.max_residual, r[0], r[1], r[2]});
  };
  auto level = [&](const std::vector<double>& s) {
    return std::fabs(xc.h[3].eval(std::span<const double>(s))) + std::fabs(xc.h[4].eval(std::span<const double>(s)));
  };
  record(0.0, state);
  if (steps == 0 || T == 0.0) return out;
  const double level0 = level(state);
  const double dt = T / double(steps);
  auto f = [&](const std::vector<double>& s) { return xc.field.eval(std::span<const double>(s)); };
  for (std::size_t k = 1; k <= steps; ++k) {
    const auto k1 = f(state);
    const auto k2 = f(axpy(state, dt / 2, k1));
    const auto k3 = f(axpy(state, dt / 2, k2));
    const auto k4 = f(axpy(state, dt, k3));
    for (std::size_t i = 0; i < state.size(); ++i) state[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    record(dt * double(k), state);
    if (out.max_residual > options.drift_tolerance) {
      out.status = TrajectoryStatus::residual_exceeded;
      break;
    }
    if (level(state) < options.floor * level0) {
      out.status = TrajectoryStatus::boundary;
      break;
    }
  }
  return out;
}

FloatRank float_rank(const std::vector<std::vector<double>>& rows, double threshold) {
  FloatRank out;
  std::vector<const std::vector<double>*> nonzero;
  for (const auto& r : rows) {
    double norm = 0;
    for (double x : r) norm += x * x;
    if (norm > 0) nonzero.push_back(&r);
  }
  if (nonzero.empty()) return out;
  const std::size_t cols = nonzero.front()->size();
  Eigen::MatrixXd m(nonzero.size(), cols);
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    double norm = 0;
    for (double x : *nonzero[i]) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < cols; ++j) m(Eigen::Index(i), Eigen::Index(j)) = (*nonzero[i])[j] / norm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  const double top = sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double rel = sv(i) / top;
    if (rel > threshold) ++out.rank;
    if (rel > threshold / 10 && rel <= threshold * 10) out.marginal = true;
  }
  return out;
}

NuReport nu_along(ConeFlag& flag, const Trajectory& traj, const CovectorSample& start, std::size_t stride) {
  const std::size_t n = flag.distribution().dim();
  if (traj.states.empty()) throw Error("empty trajectory");
  if (stride == 0) stride = 1;
  NuReport out;
  out.exact_nu0 = class_at_sample(flag, start, 0).nu;
  for (std::size_t idx = 0; idx < traj.states.size(); idx += stride) out.indices.push_back(idx);
  if (out.indices.back() != traj.states.size() - 1) out.indices.push_back(traj.states.size() - 1);
  for (std::size_t idx : out.indices) {
    const std::span<const double> s(traj.states[idx]);
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> ranks;
    bool marginal = false;
    std::size_t nu = 0;
    for (std::size_t k = 0;; ++k) {
      if (k > n) throw Error("float cone flag did not stabilize");
      for (const auto& f : flag.layer(k)) rows.push_back(f.eval(s));
      FloatRank r = float_rank(rows);
      marginal = marginal || r.marginal;
      ranks.push_back(r.rank);
      if (k > 0 && ranks[k] == ranks[k - 1]) {
        nu = k - 1;
        break;
      }
    }
    out.nu.push_back(nu);
    out.marginal.push_back(marginal);
    out.any_marginal = out.any_marginal || marginal;
  }
  const CorankClaim claim = corank_claim(n, out.nu.back());
  out.corank_bound = claim.bound;
  out.corank_one = claim.corank_one;
  return out;
}

CorankClaim corank_claim(std::size_t n, std::size_t nu) {
  if (n < 3 || nu > n - 3) throw Error("class exceeds n-3");
  return CorankClaim{n - 2 - nu, nu == n - 3};
}

}  // namespace rank2
