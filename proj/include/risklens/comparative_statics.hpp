#ifndef RISKLENS_COMPARATIVE_STATICS_HPP
#define RISKLENS_COMPARATIVE_STATICS_HPP

#include <utility>
#include <vector>

#include "risklens/extended_cdf.hpp"
#include "risklens/preferences.hpp"

namespace risklens {

// A physical outside option: drawn from the alternative set itself, or
// unavailable with some probability.
struct PhysicalOutsideOption {
  double unavailable_mass = 0.0;
  std::vector<std::pair<double, double>> option_masses;  // (alternative, mass)
};

// F(k) = mu({y : v(y) <= k}) with the unavailable outcome valued -inf:
// an extended CDF with alpha = unavailable_mass and an atom of mass mu(y) at
// v(y) for each y (merged at equal v-values). Concentrated on v(X) u {-inf}
// by construction.
ExtendedCdf induce_F(const PhysicalOutsideOption& mu, const RiskAttitude& v);

struct McsPartA {
  bool lra;    // effective_utility(v,Fhat) less risk-averse than effective_utility(v,F)
  bool rhr;    // Fhat better than F in the reverse hazard rate order on v(X) \ {sup}
  bool agree;  // the two booleans coincide (the theorem predicts they always do)
};

// Both sides of the fixed-v comparative static, computed independently.
// Preconditions (checked): F, Fhat concentrated on v(X) u {-inf} and
// strictly positive above inf v(X).
McsPartA mcs_part_a_check(const RiskAttitude& v, const ExtendedCdf& f, const ExtendedCdf& fhat);

struct McsPartB {
  bool lra_u;
  bool lra_v;
  bool agree;
};

// Both sides of the fixed-outside-option comparative static: holding the
// physical measure mu fixed realizes F o v = Fhat o vhat exactly.
McsPartB mcs_part_b_check(const RiskAttitude& v, const RiskAttitude& vhat,
                          const PhysicalOutsideOption& mu);

// CARA true attitude with coefficient sigma, reversed-exponential monetary
// outside option with reverse hazard rate lambda on X = (-inf, x0).
struct CaraSpec {
  double sigma;
  double lambda;  // >= 0
  double x0;
};

// closed form: effective coefficient rho = sigma - lambda
double cara_effective_rho(const CaraSpec& spec);

struct CaraGrid {
  double lo;
  int n;  // number of grid points on [lo, x0]
};

struct CaraNumericResult {
  std::vector<double> xs;       // interior grid points (rho_hat defined here)
  std::vector<double> vs;       // v at interior points
  std::vector<double> us;       // effective utility at interior points
  std::vector<double> rho_hat;  // -u''/u' estimates
  double max_abs_err;           // vs sigma - lambda, over the 10%-margin interior
  double rho_closed_form;
};

// Discretizes v and the reversed-exponential G on [lo, x0] (left-tail mass of
// G lumped into an atom at lo), forms the induced F and effective utility, and
// estimates -u''/u' by central differences. Interior error excludes a boundary
// margin of 10% of the span on each side.
CaraNumericResult cara_numeric_check(const CaraSpec& spec, const CaraGrid& grid);

}  // namespace risklens

#endif
