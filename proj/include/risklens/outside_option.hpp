#ifndef RISKLENS_OUTSIDE_OPTION_HPP
#define RISKLENS_OUTSIDE_OPTION_HPP

#include <optional>
#include <stdexcept>

#include "risklens/extended_cdf.hpp"
#include "risklens/preferences.hpp"

namespace risklens {

// A pair (v, F): true risk attitude plus outside-option value distribution,
// together with the affine normalization alpha*u + beta = chi_F o v.
struct OORepresentation {
  RiskAttitude v;
  ExtendedCdf F;
  double alpha = 1.0;
  double beta = 0.0;
};

// Thrown when identification is requested for a u that is not less
// risk-averse than v; carries the violating Pratt triple.
class CrossRatioError : public std::runtime_error {
 public:
  CrossRatioError(const std::string& what, PrattWitness w)
      : std::runtime_error(what), witness(w) {}
  PrattWitness witness;
};

// Effective risk attitude u(x) = chi_F(v(x)), gauge alpha = 1, beta = 0.
RiskAttitude effective_utility(const RiskAttitude& v, const ExtendedCdf& f);

struct IdentifyResult {
  ExtendedCdf F;
  double alpha;
  double beta;
  bool concentrated;  // on cl(v(X)) u {-inf}; true by construction
};

// Identification of the rationalizing outside-option distribution from the
// greatest convex transform: with phi the interpolant of u o v^{-1} and
// lambda its final segment slope, F is phi'/lambda below the top of v(X) and
// 1 above. Returned as an atom-only CDF: the level at inf v(X) becomes the
// -inf mass and each slope change an atom. F is pinned down by u only on
// [inf v(X), sup v(X)); this canonical representative has no atom at the top.
// Requires u, v non-constant and u less risk-averse than v (else
// CrossRatioError).
IdentifyResult identify_F(const RiskAttitude& u, const RiskAttitude& v);

// Fits alpha > 0, beta by matching the extremes of u, then checks
// alpha*u(x) + beta = chi_F(rep.v(x)) for every alternative within tol.
bool verify_representation(const RiskAttitude& u, const OORepresentation& rep, double tol);

// Construction of a true risk attitude v from (u, F): v = phi^{-1} o u with
// phi = chi + beta on J = {F > 0}, where beta = inf u(X) - inf chi(J) - 1
// when F has no -inf mass and beta = 0 otherwise.
RiskAttitude construct_v_prop2(const RiskAttitude& u, const ExtendedCdf& f);

}  // namespace risklens

#endif
