#pragma once

#include <string>
#include <vector>

#include "rank2/distribution/distribution.hpp"
#include "rank2/exact/matrix.hpp"
#include "rank2/exact/parse.hpp"
#include "support/oracles.hpp"

namespace rank2::testing {

// A from-scratch construction of the cone flag J^(i) at a covector, used to
// cross-check the library. Hamiltonians, Hamiltonian fields and tangency
// corrections are written out by hand on T*M with coordinates (x, p).
class ConeOracle {
 public:
  explicit ConeOracle(const Distribution& d) : n_(d.dim()) {
    std::vector<std::string> names = d.chart().coords();
    for (const auto& c : d.chart().coords()) names.push_back("p_" + c);
    total_ = Chart(names);
    const VectorField& x1 = d[0];
    const VectorField& x2 = d[1];
    const VectorField x3 = lie_bracket(x1, x2);
    const std::vector<VectorField> base = {x1, x2, x3, lie_bracket(x1, x3), lie_bracket(x2, x3)};
    for (const auto& x : base) h_.push_back(hamiltonian(x));
    const VectorField hf1 = ham_field(h_[0]), hf2 = ham_field(h_[1]);
    xc_ = h_[4] * hf1 - h_[3] * hf2;

    // Rows X1, X2, X3 of the base frame over the function field.
    FMatrix frame(3, n_);
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < n_; ++i) frame(j, i) = base[j][i];
    // Vertical fields: annihilator covectors of D^2 placed on the momenta.
    for (const auto& eta : rank_nullspace(frame).nullspace) generators_.push_back(vertical(eta));
    // W1 needs <c, X> = (0, -h3, -h4), W2 needs (h3, 0, -h5): write
    // c = -h3 a - h4 b (resp. h3 c1 - h5 b) with a, b, c1 dual to the frame.
    const RatFunc zero = RatFunc(Poly(d.chart().ring()));
    const RatFunc one = RatFunc(Poly(d.chart().ring(), Rational(1)));
    const FVector a = solve(frame, {zero, one, zero});
    const FVector b = solve(frame, {zero, zero, one});
    const FVector c1 = solve(frame, {one, zero, zero});
    generators_.push_back(hf1 - h_[2] * vertical(a) - h_[3] * vertical(b));
    generators_.push_back(hf2 + h_[2] * vertical(c1) - h_[4] * vertical(b));
  }

  const Chart& total() const { return total_; }
  const std::vector<RatFunc>& h() const { return h_; }
  const VectorField& xc() const { return xc_; }
  const std::vector<VectorField>& generators() const { return generators_; }

  // r_0, r_1, ... until two consecutive ranks agree.
  std::vector<std::size_t> trace(const std::vector<Rational>& lambda) const {
    std::vector<std::vector<Rational>> values;
    std::vector<VectorField> layer = generators_;
    for (const auto& g : layer) values.push_back(g.eval(lambda));
    std::vector<std::size_t> ranks = {oracle_rank(values)};
    while (ranks.size() < 2 || ranks.back() != ranks[ranks.size() - 2]) {
      std::vector<VectorField> next;
      for (const auto& g : layer) {
        next.push_back(lie_bracket(xc_, g));
        values.push_back(next.back().eval(lambda));
      }
      layer = std::move(next);
      ranks.push_back(oracle_rank(values));
    }
    return ranks;
  }

 private:
  RatFunc lift(const RatFunc& f) const { return parse_expression(to_string(f), total_.ring()); }

  RatFunc hamiltonian(const VectorField& x) const {
    RatFunc h(Poly(total_.ring()));
    for (std::size_t i = 0; i < n_; ++i)
      h += parse_expression(total_.coords()[n_ + i], total_.ring()) * lift(x[i]);
    return h;
  }

  VectorField ham_field(const RatFunc& h) const {
    std::vector<RatFunc> c(2 * n_, RatFunc(Poly(total_.ring())));
    for (std::size_t i = 0; i < n_; ++i) {
      c[i] = diff(h, total_.coords()[n_ + i]);
      c[n_ + i] = -diff(h, total_.coords()[i]);
    }
    return VectorField(total_, std::move(c));
  }

  VectorField vertical(const FVector& w) const {
    std::vector<RatFunc> c(2 * n_, RatFunc(Poly(total_.ring())));
    for (std::size_t i = 0; i < n_; ++i) c[n_ + i] = lift(w[i]);
    return VectorField(total_, std::move(c));
  }

  std::size_t n_;
  Chart total_;
  std::vector<RatFunc> h_;
  VectorField xc_;
  std::vector<VectorField> generators_;
};

}  // namespace rank2::testing
