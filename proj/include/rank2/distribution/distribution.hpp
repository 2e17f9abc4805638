#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rank2/geometry/fields.hpp"

namespace rank2 {

// A distribution given by a frame of vector fields on a chart. Rank-2 frames
// are the primary objects; wider frames appear for derived distributions.
class Distribution {
 public:
  Distribution() = default;
  Distribution(Chart chart, std::vector<VectorField> frame);

  const Chart& chart() const noexcept { return chart_; }
  std::size_t dim() const noexcept { return chart_.dim(); }
  std::size_t rank() const noexcept { return frame_.size(); }
  const std::vector<VectorField>& frame() const noexcept { return frame_; }
  const VectorField& operator[](std::size_t i) const { return frame_[i]; }
  bool is_polynomial() const;

  // Throws PoleError when a frame coefficient has a pole at q and
  // PreconditionError when the frame is dependent at q.
  void check_point(std::span<const Rational> q) const;

 private:
  Chart chart_;
  std::vector<VectorField> frame_;
};

enum class FlagKind { weak, strong };

// Pointwise dimensions of a derived flag. generators[i] holds the bracket
// words introduced at level i+1 (pruned of exact linear dependencies).
struct FlagReport {
  FlagKind kind = FlagKind::weak;
  std::vector<std::size_t> dims;
  std::vector<std::vector<VectorField>> generators;
  // The flag filled the tangent space, or the bracket words stopped producing
  // new fields (so no deeper level can grow).
  bool stabilized = false;
};

// dims[i-1] = dim D^i(q), where D^i is spanned by bracket words of length <= i.
FlagReport weak_flag(const Distribution& d, std::span<const Rational> q, std::size_t max_depth);
// dims[i-1] = dim D^[i](q), where D^[i+1] = D^[i] + [D^[i], D^[i]].
FlagReport strong_flag(const Distribution& d, std::span<const Rational> q, std::size_t max_depth);

// Seeded rational points near q: each coordinate moved by k/2, k in [-3, 3],
// skipping points where the frame has a pole or is dependent.
std::vector<Point> sample_points_near(const Distribution& d, std::span<const Rational> q,
                                      std::size_t count, std::uint64_t seed);

// Strong flag dims are (2, 3, ..., n) at q and at `extra_samples` nearby points.
bool is_goursat(const Distribution& d, std::span<const Rational> q, std::size_t extra_samples = 2,
                std::uint64_t seed = 1);

// dim D^3(q), which is at most 5 for a rank-2 distribution.
std::size_t cube_dim(const Distribution& d, std::span<const Rational> q);

struct EquiregularVerdict {
  bool equiregular = false;
  std::vector<Point> points;  // q first, then the samples
  std::vector<std::vector<std::size_t>> growth;
};

// Compares the small growth vector at q with those at `samples` nearby points.
// This is a sampling proxy for local constancy, not a certificate.
EquiregularVerdict equiregular_check(const Distribution& d, std::span<const Rational> q,
                                     std::size_t samples, std::uint64_t seed = 1);

}  // namespace rank2

namespace rank2 {

// Polynomial one-forms spanning the annihilator of span(fields) over the
// rational-function field (generic rank). Deterministic Bareiss pivoting.
std::vector<OneForm> annihilator_basis(const Chart& chart, const std::vector<VectorField>& fields);

// Frame (X1, X2, [X1, X2]) of D^2 for a rank-2 distribution.
std::vector<VectorField> square_frame(const Distribution& d);

}  // namespace rank2
