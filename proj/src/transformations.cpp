#include "risklens/transformations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "risklens/rng.hpp"

namespace risklens {

void validate_kernel(const LotteryKernel& kernel) {
  if (kernel.xs.size() < 2) throw std::invalid_argument("kernel: needs at least two alternatives");
  if (kernel.xs.size() != kernel.cdfs.size())
    throw std::invalid_argument("kernel: one CDF per alternative required");
  for (std::size_t i = 0; i + 1 < kernel.xs.size(); ++i)
    if (!(kernel.xs[i] < kernel.xs[i + 1]))
      throw std::invalid_argument("kernel: alternatives must be strictly increasing");
  const SetDescriptor support = SetDescriptor::finite(kernel.xs);
  for (const auto& f : kernel.cdfs) {
    if (f.neg_inf_mass() > 0.0)
      throw std::invalid_argument("kernel: entry carries -inf mass");
    if (!f.concentrated_on(support, /*allow_neg_inf=*/false))
      throw std::invalid_argument("kernel: entry not concentrated on X");
  }
}

namespace {

std::vector<Atom> merged_atoms(std::map<double, double>& acc, double drop_below = 1e-15) {
  std::vector<Atom> atoms;
  for (const auto& [at, m] : acc)
    if (m > drop_below) atoms.push_back(Atom{at, m});
  return atoms;
}

}  // namespace

LotteryKernel synthesize(const Decomposition& d, const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("synthesize: needs at least two alternatives");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw std::invalid_argument("synthesize: alternatives must be strictly increasing");
  if (!(d.lambda > 0.0) || d.lambda > 1.0)
    throw std::invalid_argument("synthesize: lambda must lie in (0, 1]");
  const SetDescriptor support = SetDescriptor::finite(xs);
  if (!d.G.concentrated_on(support, /*allow_neg_inf=*/true))
    throw std::invalid_argument("synthesize: G not concentrated on X u {-inf}");
  if (!(d.G(xs.front()) > 0.0))
    throw std::invalid_argument("synthesize: G must be positive above inf X");
  if (d.H.neg_inf_mass() > 0.0 || !d.H.concentrated_on(support, false))
    throw std::invalid_argument("synthesize: H must be a proper CDF on X");
  if (d.H_star) {
    if (d.H_star->neg_inf_mass() > 0.0 || !d.H_star->concentrated_on(support, false))
      throw std::invalid_argument("synthesize: H_star must be a proper CDF on X");
    for (double x : xs)
      if ((*d.H_star)(x) > d.H(x) + 1e-12)
        throw std::invalid_argument("synthesize: H_star must dominate H in FOSD");
  }

  LotteryKernel out;
  out.xs = xs;
  out.cdfs.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const bool top = (i + 1 == xs.size());
    const ExtendedCdf& h = (top && d.H_star) ? *d.H_star : d.H;
    std::map<double, double> acc;
    // lambda * (G truncated at x): mass at or below x, including -inf, lifts to x
    acc[xs[i]] += d.lambda * d.G(xs[i]);
    for (const auto& a : d.G.atoms())
      if (a.at > xs[i]) acc[a.at] += d.lambda * a.mass;
    for (const auto& a : h.atoms()) acc[a.at] += (1.0 - d.lambda) * a.mass;
    out.cdfs.push_back(ExtendedCdf(0.0, merged_atoms(acc), {}));
  }
  return out;
}

namespace {

DecomposeResult fail(std::string violated, double y, double z, double at, std::string detail) {
  DecomposeResult r;
  r.failure = KernelFailure{std::move(violated), y, z, at, std::move(detail)};
  return r;
}

ExtendedCdf cdf_from_levels(double base_is_neg_inf_mass, const std::vector<double>& xs,
                            const std::vector<double>& levels, bool neg_inf_base) {
  // levels[k] = F(xs[k]); base level becomes -inf mass or an atom at xs[0]
  std::map<double, double> acc;
  if (neg_inf_base) {
    // handled by caller via the constructor's alpha
  } else {
    acc[xs[0]] += levels[0];
  }
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double jump = levels[k] - levels[k - 1];
    if (jump > 1e-15) acc[xs[k]] += jump;
  }
  return ExtendedCdf(neg_inf_base ? base_is_neg_inf_mass : 0.0, merged_atoms(acc), {});
}

}  // namespace

DecomposeResult decompose(const LotteryKernel& kernel, double tol) {
  validate_kernel(kernel);
  const std::size_t n = kernel.xs.size();
  const std::vector<double>& xs = kernel.xs;

  std::vector<std::vector<double>> c(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) c[i][k] = kernel.cdfs[i](xs[k]);

  // x -> G_x must be strictly increasing in first-order stochastic dominance
  for (std::size_t i = 0; i + 1 < n; ++i) {
    bool strict = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (c[i][k] < c[i + 1][k] - tol)
        return fail("fosd_monotonicity", xs[i], xs[i + 1], xs[k],
                    "kernel decreases in FOSD between these alternatives");
      if (c[i][k] > c[i + 1][k] + tol) strict = true;
    }
    if (!strict)
      return fail("fosd_monotonicity", xs[i], xs[i + 1], xs[i],
                  "kernel is not strictly increasing in FOSD");
  }

  // claim 1 over X \ {max X}: G_x and G_y agree outside [x, y)
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j + 1 < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (xs[k] >= xs[i] && xs[k] < xs[j]) continue;
        if (std::fabs(c[i][k] - c[j][k]) > tol)
          return fail("claim1", xs[i], xs[j], xs[k],
                      "entries differ outside the replacement window");
      }
    }
  }

  std::vector<double> lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    lo[k] = c[0][k];
    hi[k] = c[0][k];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      lo[k] = std::min(lo[k], c[i][k]);
      hi[k] = std::max(hi[k], c[i][k]);
    }
  }
  // structure equation G_x = L + 1_[x,inf)(R-L) on X \ {max X}
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double expected = xs[k] >= xs[i] ? hi[k] : lo[k];
      if (std::fabs(c[i][k] - expected) > tol)
        return fail("claim1", xs[i], xs[i], xs[k], "structure equation violated");
    }
  }

  // overlap gap D = R - L, identified strictly below the second-largest point
  std::vector<double> d;
  if (n >= 3) {
    d.resize(n - 2);
    for (std::size_t k = 0; k + 2 < n; ++k) d[k] = hi[k] - lo[k];
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
      if (d[k + 1] < d[k] - tol)
        return fail("claim2", xs[k], xs[k + 1], xs[k], "overlap gap R - L decreases");
  }

  // claim 3: the top entry must sit at or below L strictly below the top
  for (std::size_t k = 0; k + 2 < n; ++k)
    if (c[n - 1][k] > lo[k] + tol)
      return fail("claim3", xs[n - 1], xs[n - 1], xs[k],
                  "top entry exceeds L below the greatest alternative");

  const double a_gap = n >= 3 ? d[n - 3] : 0.0;
  const double l_max = n >= 3 ? lo[n - 3] : 0.0;
  const double r_top = hi[n - 2];
  const double t_top = c[n - 1][n - 2];

  // canonical gauge: largest feasible lambda
  double lambda = 1.0 - std::max(l_max, t_top);
  if (lambda <= tol)
    return fail("lambda_infeasible", xs[n - 1], xs[n - 1], xs[n - 2],
                "no positive lambda is consistent with the kernel");
  if (lambda < a_gap - tol)
    return fail("lambda_infeasible", xs[n - 1], xs[n - 1], xs[n - 2],
                "overlap gap exceeds every feasible lambda");
  if (t_top > r_top - a_gap + tol)
    return fail("lambda_infeasible", xs[n - 1], xs[n - 1], xs[n - 2],
                "top entry incompatible with the overlap gap");
  const bool unit_lambda = lambda >= 1.0 - tol;
  if (unit_lambda) lambda = 1.0;

  const double mu_h = unit_lambda ? 0.0 : std::min(1.0 - lambda, r_top - a_gap);

  std::vector<double> gv(n);
  for (std::size_t k = 0; k + 2 < n; ++k) gv[k] = d[k] / lambda;
  gv[n - 2] = (r_top - mu_h) / lambda;
  gv[n - 1] = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (gv[k + 1] < gv[k] - tol)
      return fail("lambda_infeasible", xs[k], xs[k + 1], xs[k], "recovered G not monotone");
    gv[k + 1] = std::max(gv[k + 1], gv[k]);
  }
  if (!(gv[0] > tol))
    return fail("lambda_infeasible", xs[0], xs[1], xs[0], "recovered G vanishes above inf X");
  for (std::size_t k = 0; k < n; ++k) gv[k] = std::min(gv[k], 1.0);

  Decomposition out{
      lambda,
      cdf_from_levels(gv[0], xs, gv, /*neg_inf_base=*/true),
      ExtendedCdf::point_mass(xs[0]),
      std::nullopt,
      unit_lambda,
  };

  if (!unit_lambda) {
    std::vector<double> hv(n), sv(n);
    for (std::size_t k = 0; k + 2 < n; ++k) hv[k] = lo[k] / (1.0 - lambda);
    hv[n - 2] = mu_h / (1.0 - lambda);
    hv[n - 1] = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (hv[k + 1] < hv[k] - tol)
        return fail("lambda_infeasible", xs[k], xs[k + 1], xs[k], "recovered H not monotone");
      hv[k + 1] = std::max(hv[k + 1], hv[k]);
    }
    for (std::size_t k = 0; k < n; ++k) hv[k] = std::min(hv[k], 1.0);

    for (std::size_t k = 0; k + 1 < n; ++k) sv[k] = c[n - 1][k] / (1.0 - lambda);
    sv[n - 1] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (sv[k] > hv[k] + tol)
        return fail("claim3", xs[n - 1], xs[n - 1], xs[k],
                    "top entry is not FOSD-better than the recovered H");
      sv[k] = std::min(sv[k], hv[k]);
    }
    out.H = cdf_from_levels(0.0, xs, hv, /*neg_inf_base=*/false);
    double dev = 0.0;
    for (std::size_t k = 0; k < n; ++k) dev = std::max(dev, std::fabs(sv[k] - hv[k]));
    if (dev > tol) out.H_star = cdf_from_levels(0.0, xs, sv, /*neg_inf_base=*/false);
  } else {
    // lambda = 1 forces L = 0; the top entry must be degenerate at max X
    for (std::size_t k = 0; k + 1 < n; ++k)
      if (c[n - 1][k] > tol)
        return fail("claim3", xs[n - 1], xs[n - 1], xs[k],
                    "top entry carries mass below the greatest alternative at lambda = 1");
  }

  DecomposeResult r;
  r.decomposition = std::move(out);
  return r;
}

namespace {

// atom masses of every kernel entry at every alternative
std::vector<std::vector<double>> kernel_masses(const LotteryKernel& kernel) {
  const std::size_t n = kernel.xs.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m[i][k] = kernel.cdfs[i].atom_mass_at(kernel.xs[k]);
  return m;
}

std::vector<double> effective_map(const std::vector<std::vector<double>>& masses,
                                  const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> m(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) m[i] += masses[i][k] * v[k];
  return m;
}

// bounded strictly increasing v: cumulative positive uniform increments,
// rescaled to [0, 1]
std::vector<double> sample_v(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  v[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) v[k] = v[k - 1] + rng.uniform(0.02, 1.0);
  const double top = v.back();
  for (double& x : v) x /= top;
  return v;
}

std::optional<RiskReductionWitness> witness_from_pratt(const RiskAttitude& m,
                                                       const RiskAttitude& v,
                                                       const PrattWitness& pw) {
  const auto ix = m.index_of(pw.x), iy = m.index_of(pw.y), iz = m.index_of(pw.z);
  if (!ix || !iy || !iz) return std::nullopt;
  if (pw.y == pw.z) {
    // ordinal-equivalence failure on the pair (x, y): a degenerate lottery
    const double dm = m.value(*ix) - m.value(*iy);
    const double dv = v.value(*ix) - v.value(*iy);
    double sure = pw.x, other = pw.y;
    if (dv > 0.0 && dm <= 0.0) std::swap(sure, other);  // violation runs the other way
    const auto is = m.index_of(sure), io = m.index_of(other);
    const double margin = v.value(*io) - v.value(*is);
    return RiskReductionWitness{v, SimpleLottery::degenerate(other), sure, margin};
  }
  const double mx = m.value(*ix), my = m.value(*iy), mz = m.value(*iz);
  if (!(mx < my && my < mz)) return std::nullopt;
  const double q = (mz - my) / (mz - mx);
  if (!(q > 0.0 && q < 1.0)) return std::nullopt;
  SimpleLottery p({{pw.x, q}, {pw.z, 1.0 - q}});
  const double margin = expected_utility(v, p) - v.value(*iy);
  if (!(margin > 0.0)) return std::nullopt;
  return RiskReductionWitness{v, p, pw.y, margin};
}

}  // namespace

RiskReductionReport check_risk_reduction(const LotteryKernel& kernel, int v_samples,
                                         std::uint64_t seed) {
  validate_kernel(kernel);
  if (v_samples < 1) throw std::invalid_argument("check_risk_reduction: needs v_samples >= 1");
  const auto masses = kernel_masses(kernel);
  Rng base(seed);
  for (int s = 0; s < v_samples; ++s) {
    Rng rng = base.fork(static_cast<std::uint64_t>(s));
    const std::vector<double> vv = sample_v(kernel.xs.size(), rng);
    const RiskAttitude v(kernel.xs, vv);
    const RiskAttitude m(kernel.xs, effective_map(masses, vv));
    PrattWitness pw{};
    if (!less_risk_averse_crossratio(m, v, 1e-9, &pw)) {
      auto w = witness_from_pratt(m, v, pw);
      if (w) return RiskReductionReport{false, s + 1, std::move(w)};
    }
    LotteryWitness lw{SimpleLottery::degenerate(kernel.xs[0]), 0.0, 0.0};
    if (!less_risk_averse_oracle(m, v, 40, rng.next_u64(), 1e-9, &lw)) {
      return RiskReductionReport{false, s + 1,
                                 RiskReductionWitness{v, lw.p, lw.x, lw.margin}};
    }
  }
  return RiskReductionReport{true, v_samples, std::nullopt};
}

Theorem3Report theorem3_agreement(const LotteryKernel& kernel, int v_samples,
                                  std::uint64_t seed) {
  RiskReductionReport rr = check_risk_reduction(kernel, v_samples, seed);
  const DecomposeResult dec = decompose(kernel);
  bool lra = rr.all_pass;
  if (!dec.ok() && lra) {
    // sampling missed it; drive the search with the structural witness
    if (directed_violation_search(kernel, *dec.failure)) lra = false;
  }
  return Theorem3Report{lra, dec.ok(), lra == dec.ok()};
}

namespace {

// antiderivative of pi(t) = exp(-|t|) vanishing at 0
double pi_antideriv(double t) { return t >= 0.0 ? 1.0 - std::exp(-t) : std::exp(t) - 1.0; }

// int over (a, b) of pi
double pi_mass(double a, double b) { return a >= b ? 0.0 : pi_antideriv(b) - pi_antideriv(a); }

// w_eps(t) = int_0^t (1_A + eps * pi * 1_{R \ A}) for a union of intervals A
double w_eps(double t, const std::vector<std::pair<double, double>>& a_parts, double eps) {
  const double s = t >= 0.0 ? 1.0 : -1.0;
  const double c = std::min(0.0, t), d = std::max(0.0, t);
  double len_a = 0.0, pi_a = 0.0;
  for (const auto& [a, b] : a_parts) {
    const double aa = std::max(a, c), bb = std::min(b, d);
    if (aa < bb) {
      len_a += bb - aa;
      pi_a += pi_mass(aa, bb);
    }
  }
  return s * (len_a + eps * (pi_mass(c, d) - pi_a));
}

}  // namespace

std::optional<RiskReductionWitness> directed_violation_search(const LotteryKernel& kernel,
                                                              const KernelFailure& failure) {
  validate_kernel(kernel);
  const std::vector<double>& xs = kernel.xs;
  const std::size_t n = xs.size();
  const auto masses = kernel_masses(kernel);

  if (failure.violated == "fosd_monotonicity") {
    // v_eps = eps * w + 1_(z,inf) with the step just below the reversal point
    const double span = xs.back() - xs.front();
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
      std::vector<double> vv(n);
      for (std::size_t k = 0; k < n; ++k)
        vv[k] = eps * (xs[k] - xs.front()) / span + (xs[k] > failure.at ? 1.0 : 0.0);
      const RiskAttitude v(xs, vv);
      const RiskAttitude m(xs, effective_map(masses, vv));
      PrattWitness pw{};
      if (!less_risk_averse_crossratio(m, v, 1e-9, &pw)) {
        auto w = witness_from_pratt(m, v, pw);
        if (w) return w;
      }
    }
    return std::nullopt;
  }

  std::vector<std::pair<double, double>> a_parts;
  std::size_t ix = 0, iy = 0, iz = 0;
  if (failure.violated == "claim1") {
    const double delta = std::max(std::fabs(xs.front()), std::fabs(xs.back())) + 2.0;
    a_parts = {{-delta, failure.y}, {failure.z, delta}};
    auto fx = std::find(xs.begin(), xs.end(), failure.y);
    auto fy = std::find(xs.begin(), xs.end(), failure.z);
    if (fx == xs.end() || fy == xs.end()) return std::nullopt;
    ix = static_cast<std::size_t>(fx - xs.begin());
    iy = static_cast<std::size_t>(fy - xs.begin());
    if (iy + 1 >= n) return std::nullopt;
    iz = iy + 1;
  } else if (failure.violated == "claim2") {
    auto fx = std::find(xs.begin(), xs.end(), failure.y);
    if (fx == xs.end()) return std::nullopt;
    ix = static_cast<std::size_t>(fx - xs.begin());
    if (ix + 2 >= n) return std::nullopt;
    iy = ix + 1;
    iz = ix + 2;
    const double alpha = 0.5 * std::min(xs[iy] - xs[ix], xs[iz] - xs[iy]);
    a_parts = {{xs[ix], xs[ix] + alpha}, {xs[iy], xs[iy] + alpha}};
  } else {
    return std::nullopt;
  }

  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    std::vector<double> vv(n);
    for (std::size_t k = 0; k < n; ++k) vv[k] = w_eps(xs[k], a_parts, eps);
    const RiskAttitude v(xs, vv);
    const RiskAttitude m(xs, effective_map(masses, vv));
    // test the proof's triple first, then fall back to the full scan
    const double mx = m.value(ix), my = m.value(iy), mz = m.value(iz);
    if (mx < my && my < mz) {
      const double ru = (mz - my) / (my - mx);
      const double rv = (v.value(iz) - v.value(iy)) / (v.value(iy) - v.value(ix));
      if (ru < rv - 1e-9) {
        auto w = witness_from_pratt(m, v, PrattWitness{xs[ix], xs[iy], xs[iz], ru, rv});
        if (w) return w;
      }
    }
    PrattWitness pw{};
    if (!less_risk_averse_crossratio(m, v, 1e-9, &pw)) {
      auto w = witness_from_pratt(m, v, pw);
      if (w) return w;
    }
  }
  return std::nullopt;
}

}  // namespace risklens
