#ifndef RISKLENS_PREFERENCES_HPP
#define RISKLENS_PREFERENCES_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "risklens/piecewise_linear.hpp"

namespace risklens {

// A risk attitude on a finite alternative set. Alternatives are identified
// with their real positions, kept sorted; values are arbitrary finite reals.
class RiskAttitude {
 public:
  RiskAttitude(std::vector<double> alternatives, std::vector<double> values);

  std::size_t size() const { return alts_.size(); }
  double alternative(std::size_t i) const { return alts_[i]; }
  double value(std::size_t i) const { return vals_[i]; }
  const std::vector<double>& alternatives() const { return alts_; }
  const std::vector<double>& values() const { return vals_; }

  // index of the alternative at position x (exact match), or nullopt
  std::optional<std::size_t> index_of(double x) const;

  bool same_alternatives(const RiskAttitude& other) const;
  double min_value() const;
  double max_value() const;
  bool is_constant(double tol) const;
  std::vector<double> distinct_values_sorted() const;

 private:
  std::vector<double> alts_;
  std::vector<double> vals_;
};

// Finitely supported probability mass function over alternatives.
class SimpleLottery {
 public:
  // entries: (alternative position, probability); probabilities > 0, sum 1
  explicit SimpleLottery(std::vector<std::pair<double, double>> support);

  static SimpleLottery degenerate(double x);

  const std::vector<std::pair<double, double>>& support() const { return support_; }

 private:
  std::vector<std::pair<double, double>> support_;
};

// sum p(x) u(x); throws if the lottery's support is not among u's alternatives
double expected_utility(const RiskAttitude& u, const SimpleLottery& p);

// A triple x < y < z (alternative positions) violating the cross-ratio test.
struct PrattWitness {
  double x, y, z;
  double ratio_u, ratio_v;
};

// A sure alternative x and lottery p violating the direct implication
// "u(x) >= (>) int u dp implies v(x) >= (>) int v dp".
struct LotteryWitness {
  SimpleLottery p;
  double x;
  double margin;  // int v dp - v(x), positive at a violation
};

// Pratt cross-ratio characterization of "u is less risk-averse than v":
// (I) ordinal equivalence with ties, and (II) for every triple with
// u(x) < u(y) < u(z),
//   [u(z)-u(y)] / [u(y)-u(x)]  >=  [v(z)-v(y)] / [v(y)-v(x)] - tol.
// Exhaustive O(n^3) over alternatives.
bool less_risk_averse_crossratio(const RiskAttitude& u, const RiskAttitude& v,
                                 double tol = 1e-9, PrattWitness* witness = nullptr);

// Brute-force oracle for the same relation, checking the direct implication
// over all degenerate lotteries, all two-point lotteries on a {j/64}
// probability grid, and `trials` random lotteries with at most 4 support
// points. Independent of the cross-ratio path.
bool less_risk_averse_oracle(const RiskAttitude& u, const RiskAttitude& v, int trials,
                             std::uint64_t seed, double tol = 1e-9,
                             LotteryWitness* witness = nullptr);

// The pointwise greatest increasing convex transform phi with u = phi o v:
// it matches u o v^{-1} at the distinct values of v and is affine on each gap
// between consecutive v-values, i.e. the piecewise-linear interpolant.
// Requires v non-constant; ties in v must carry equal u values; throws if the
// interpolant fails to be convex or strictly increasing (no such phi exists).
PiecewiseLinearFn construct_phi_greatest(const RiskAttitude& u, const RiskAttitude& v);

// Central-difference estimate of u''/u' at interior points of a uniform grid
// with spacing h. Throws if the grid is not uniform or the estimated u' is
// not strictly positive.
std::vector<std::pair<double, double>> arrow_pratt_index(const RiskAttitude& u, double h);

}  // namespace risklens

#endif
