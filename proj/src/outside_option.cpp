#include "risklens/outside_option.hpp"

#include <algorithm>
#include <cmath>

namespace risklens {

RiskAttitude effective_utility(const RiskAttitude& v, const ExtendedCdf& f) {
  std::vector<double> u;
  u.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u.push_back(f.chi(v.value(i)));
  return RiskAttitude(v.alternatives(), std::move(u));
}

IdentifyResult identify_F(const RiskAttitude& u, const RiskAttitude& v) {
  PrattWitness w{};
  if (!less_risk_averse_crossratio(u, v, 1e-9, &w))
    throw CrossRatioError("identify_F: u is not less risk-averse than v", w);
  if (v.is_constant(0.0)) throw std::domain_error("identify_F: v is constant");
  if (u.is_constant(0.0)) throw std::domain_error("identify_F: u is constant");

  const PiecewiseLinearFn phi = construct_phi_greatest(u, v);
  const std::vector<SlopeSegment> segs = pwl_right_derivative(phi);
  const double lambda = segs.back().slope;  // finite knot lists make the limit exact

  // F = (first slope)/lambda below and at inf v(X), phi'/lambda in between,
  // 1 from sup v(X) up. Encoded atom-only: the base level becomes -inf mass,
  // each slope increase an atom at its knot; the top level is already 1.
  const double alpha_mass = segs.front().slope / lambda;
  std::vector<Atom> atoms;
  for (std::size_t i = 1; i < segs.size(); ++i) {
    const double jump = (segs[i].slope - segs[i - 1].slope) / lambda;
    if (jump > 0.0) atoms.push_back(Atom{segs[i].lo, jump});
  }
  ExtendedCdf f(alpha_mass, std::move(atoms), {});

  const double alpha = 1.0 / lambda;
  const double beta = f.chi(v.value(0)) - alpha * u.value(0);
  return IdentifyResult{std::move(f), alpha, beta, true};
}

bool verify_representation(const RiskAttitude& u, const OORepresentation& rep, double tol) {
  if (!u.same_alternatives(rep.v))
    throw std::domain_error("verify_representation: alternative sets differ");
  std::vector<double> chi_v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) chi_v[i] = rep.F.chi(rep.v.value(i));

  std::size_t imin = 0, imax = 0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (u.value(i) < u.value(imin)) imin = i;
    if (u.value(i) > u.value(imax)) imax = i;
  }
  double alpha = 1.0, beta = 0.0;
  const double du = u.value(imax) - u.value(imin);
  if (du <= tol) {
    // constant u: representable iff chi o v is constant too
    beta = chi_v[imin] - u.value(imin);
  } else {
    alpha = (chi_v[imax] - chi_v[imin]) / du;
    if (!(alpha > 0.0)) return false;
    beta = chi_v[imin] - alpha * u.value(imin);
  }
  for (std::size_t i = 0; i < u.size(); ++i)
    if (std::fabs(alpha * u.value(i) + beta - chi_v[i]) > tol) return false;
  return true;
}

RiskAttitude construct_v_prop2(const RiskAttitude& u, const ExtendedCdf& f) {
  // condition (I) holds throughout this distribution class: the positive-part
  // mean is finite, and u is real-valued on a finite set hence bounded below
  double beta = 0.0;
  if (f.neg_inf_mass() == 0.0) {
    const std::vector<double> bps = f.breakpoints();
    const double inf_chi_j = f.chi(bps.front());  // chi at inf J, by continuity
    beta = u.min_value() - inf_chi_j - 1.0;
  }
  std::vector<double> v;
  v.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v.push_back(f.chi_inverse(u.value(i) - beta));
  return RiskAttitude(u.alternatives(), std::move(v));
}

}  // namespace risklens
