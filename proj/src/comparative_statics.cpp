#include "risklens/comparative_statics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "risklens/errors.hpp"
#include "risklens/outside_option.hpp"

namespace risklens {

ExtendedCdf induce_F(const PhysicalOutsideOption& mu, const RiskAttitude& v) {
  if (!std::isfinite(mu.unavailable_mass) || mu.unavailable_mass < 0.0)
    throw std::invalid_argument("induce_F: invalid unavailable mass");
  std::vector<Atom> atoms;
  for (const auto& [y, m] : mu.option_masses) {
    if (!std::isfinite(m) || m < 0.0) throw std::invalid_argument("induce_F: negative mass");
    auto idx = v.index_of(y);
    if (!idx) throw std::domain_error("induce_F: option outside the alternative set");
    if (m > 0.0) atoms.push_back(Atom{v.value(*idx), m});
  }
  return ExtendedCdf(mu.unavailable_mass, std::move(atoms), {});
}

namespace {

void check_part_a_preconditions(const RiskAttitude& v, const ExtendedCdf& f, const char* name) {
  const SetDescriptor support = SetDescriptor::finite(v.distinct_values_sorted());
  if (!f.concentrated_on(support, /*allow_neg_inf=*/true))
    throw std::invalid_argument(std::string(name) + " is not concentrated on v(X) u {-inf}");
  if (!(f(v.min_value()) > 0.0))
    throw std::invalid_argument(std::string(name) + " is not positive above inf v(X)");
}

}  // namespace

McsPartA mcs_part_a_check(const RiskAttitude& v, const ExtendedCdf& f, const ExtendedCdf& fhat) {
  check_part_a_preconditions(v, f, "F");
  check_part_a_preconditions(v, fhat, "Fhat");
  const RiskAttitude u = effective_utility(v, f);
  const RiskAttitude uhat = effective_utility(v, fhat);
  const bool lra = less_risk_averse_crossratio(uhat, u);
  std::vector<double> k = v.distinct_values_sorted();
  k.pop_back();  // v(X) \ {sup v(X)}
  const bool rhr = rhr_geq(f, fhat, k);
  return McsPartA{lra, rhr, lra == rhr};
}

McsPartB mcs_part_b_check(const RiskAttitude& v, const RiskAttitude& vhat,
                          const PhysicalOutsideOption& mu) {
  if (!v.same_alternatives(vhat))
    throw std::domain_error("mcs_part_b_check: alternative sets differ");
  const ExtendedCdf f = induce_F(mu, v);
  const ExtendedCdf fhat = induce_F(mu, vhat);
  if (!(f(v.min_value()) > 0.0) || !(fhat(vhat.min_value()) > 0.0))
    throw std::invalid_argument(
        "mcs_part_b_check: induced distribution is not positive above the worst alternative");
  const RiskAttitude u = effective_utility(v, f);
  const RiskAttitude uhat = effective_utility(vhat, fhat);
  const bool lra_u = less_risk_averse_crossratio(uhat, u);
  const bool lra_v = less_risk_averse_crossratio(vhat, v);
  return McsPartB{lra_u, lra_v, lra_u == lra_v};
}

double cara_effective_rho(const CaraSpec& spec) {
  if (!(spec.lambda >= 0.0)) throw std::invalid_argument("cara: lambda must be >= 0");
  return spec.sigma - spec.lambda;
}

CaraNumericResult cara_numeric_check(const CaraSpec& spec, const CaraGrid& grid) {
  if (!(spec.lambda >= 0.0)) throw std::invalid_argument("cara: lambda must be >= 0");
  if (!(grid.lo < spec.x0)) throw std::invalid_argument("cara: grid must start below x0");
  if (grid.n < 5) throw std::invalid_argument("cara: degenerate grid");
  const int n = grid.n;
  const double h = (spec.x0 - grid.lo) / static_cast<double>(n - 1);

  // normalized CARA, same preference as exp utility for every sigma and -> x
  // as sigma -> 0
  auto v_of = [&](double x) {
    return spec.sigma == 0.0 ? x : (1.0 - std::exp(-spec.sigma * x)) / spec.sigma;
  };
  auto g_of = [&](double x) {
    return spec.lambda == 0.0 ? 1.0 : std::exp(-spec.lambda * (spec.x0 - x));
  };

  std::vector<double> xs(n), vs(n), gs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = grid.lo + h * static_cast<double>(i);
    vs[i] = v_of(xs[i]);
    gs[i] = g_of(xs[i]);
    if (!std::isfinite(vs[i]) || !std::isfinite(gs[i]))
      throw NumericError("cara: non-finite utility or distribution value on the grid");
  }
  // left tail of G lumped into an atom at the lowest grid point
  std::vector<double> mass(n);
  mass[0] = gs[0];
  for (int i = 1; i < n; ++i) mass[i] = gs[i] - gs[i - 1];

  // u_i = chi_F(v_i) with F the pushforward of the discretized G under v:
  // u_i = v_i * sum_{j<=i} m_j + sum_{j>i} m_j v_j, via prefix/suffix sums
  std::vector<double> us(n);
  std::vector<double> tail(n + 1, 0.0);
  for (int i = n - 1; i >= 0; --i) tail[i] = tail[i + 1] + mass[i] * vs[i];
  double cum = 0.0;
  for (int i = 0; i < n; ++i) {
    cum += mass[i];
    us[i] = vs[i] * cum + tail[i + 1];
    if (!std::isfinite(us[i])) throw NumericError("cara: non-finite effective utility");
  }

  const auto index = arrow_pratt_index(RiskAttitude(xs, us), h);
  const double target = cara_effective_rho(spec);
  const double margin = 0.1 * (spec.x0 - grid.lo);
  CaraNumericResult out;
  out.rho_closed_form = target;
  out.max_abs_err = 0.0;
  out.xs.reserve(index.size());
  for (std::size_t k = 0; k < index.size(); ++k) {
    const double x = index[k].first;
    const double rho = -index[k].second;
    out.xs.push_back(x);
    out.vs.push_back(vs[k + 1]);
    out.us.push_back(us[k + 1]);
    out.rho_hat.push_back(rho);
    if (x >= grid.lo + margin && x <= spec.x0 - margin)
      out.max_abs_err = std::max(out.max_abs_err, std::fabs(rho - target));
  }
  return out;
}

}  // namespace risklens
