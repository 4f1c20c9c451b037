#include "risklens/preferences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "risklens/errors.hpp"
#include "risklens/rng.hpp"

namespace risklens {

RiskAttitude::RiskAttitude(std::vector<double> alternatives, std::vector<double> values)
    : alts_(std::move(alternatives)), vals_(std::move(values)) {
  if (alts_.empty()) throw std::invalid_argument("RiskAttitude: needs at least one alternative");
  if (alts_.size() != vals_.size())
    throw std::invalid_argument("RiskAttitude: alternatives/values size mismatch");
  std::vector<std::size_t> order(alts_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return alts_[a] < alts_[b]; });
  std::vector<double> a2, v2;
  a2.reserve(alts_.size());
  v2.reserve(vals_.size());
  for (std::size_t i : order) {
    a2.push_back(alts_[i]);
    v2.push_back(vals_[i]);
  }
  alts_ = std::move(a2);
  vals_ = std::move(v2);
  for (std::size_t i = 0; i < alts_.size(); ++i) {
    if (!std::isfinite(alts_[i]) || !std::isfinite(vals_[i]))
      throw std::invalid_argument("RiskAttitude: non-finite entry");
    if (i > 0 && alts_[i] == alts_[i - 1])
      throw std::invalid_argument("RiskAttitude: duplicate alternative position");
  }
}

std::optional<std::size_t> RiskAttitude::index_of(double x) const {
  auto it = std::lower_bound(alts_.begin(), alts_.end(), x);
  if (it != alts_.end() && *it == x) return static_cast<std::size_t>(it - alts_.begin());
  return std::nullopt;
}

bool RiskAttitude::same_alternatives(const RiskAttitude& other) const {
  return alts_ == other.alts_;
}

double RiskAttitude::min_value() const { return *std::min_element(vals_.begin(), vals_.end()); }

double RiskAttitude::max_value() const { return *std::max_element(vals_.begin(), vals_.end()); }

bool RiskAttitude::is_constant(double tol) const {
  return max_value() - min_value() <= tol;
}

std::vector<double> RiskAttitude::distinct_values_sorted() const {
  std::vector<double> v = vals_;
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

SimpleLottery::SimpleLottery(std::vector<std::pair<double, double>> support)
    : support_(std::move(support)) {
  if (support_.empty()) throw std::invalid_argument("SimpleLottery: empty support");
  std::sort(support_.begin(), support_.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& [x, p] : support_) {
    if (!std::isfinite(x) || !std::isfinite(p) || p <= 0.0)
      throw std::invalid_argument("SimpleLottery: probabilities must be positive and finite");
    if (!merged.empty() && merged.back().first == x)
      merged.back().second += p;
    else
      merged.emplace_back(x, p);
  }
  support_ = std::move(merged);
  double total = 0.0;
  for (const auto& [x, p] : support_) total += p;
  if (std::fabs(total - 1.0) > 1e-12)
    throw std::invalid_argument("SimpleLottery: probabilities must sum to 1 within 1e-12");
  if (total != 1.0)
    for (auto& [x, p] : support_) p /= total;
}

SimpleLottery SimpleLottery::degenerate(double x) { return SimpleLottery({{x, 1.0}}); }

double expected_utility(const RiskAttitude& u, const SimpleLottery& p) {
  double e = 0.0;
  for (const auto& [x, q] : p.support()) {
    auto idx = u.index_of(x);
    if (!idx) throw std::domain_error("expected_utility: lottery support outside alternatives");
    e += q * u.value(*idx);
  }
  return e;
}

namespace {

// -1 / 0 / +1 with a tolerance band around ties
int sign_class(double d, double tol) {
  if (d > tol) return 1;
  if (d < -tol) return -1;
  return 0;
}

}  // namespace

bool less_risk_averse_crossratio(const RiskAttitude& u, const RiskAttitude& v, double tol,
                                 PrattWitness* witness) {
  if (!u.same_alternatives(v))
    throw std::domain_error("less_risk_averse_crossratio: alternative sets differ");
  const std::size_t n = u.size();
  // (I): ordinal equivalence, ties included
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int su = sign_class(u.value(i) - u.value(j), tol);
      const int sv = sign_class(v.value(i) - v.value(j), tol);
      if (su != sv) {
        if (witness) *witness = {u.alternative(i), u.alternative(j), u.alternative(j), 0.0, 0.0};
        return false;
      }
    }
  }
  // (II): cross-ratio compression over all triples with u(x) < u(y) < u(z)
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (sign_class(u.value(y) - u.value(x), tol) <= 0) continue;
      for (std::size_t z = 0; z < n; ++z) {
        if (sign_class(u.value(z) - u.value(y), tol) <= 0) continue;
        const double ru = (u.value(z) - u.value(y)) / (u.value(y) - u.value(x));
        const double rv = (v.value(z) - v.value(y)) / (v.value(y) - v.value(x));
        if (ru < rv - tol) {
          if (witness)
            *witness = {u.alternative(x), u.alternative(y), u.alternative(z), ru, rv};
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

bool lottery_violates(const RiskAttitude& u, const RiskAttitude& v, const SimpleLottery& p,
                      double tol, LotteryWitness* witness) {
  const double eu = expected_utility(u, p);
  const double ev = expected_utility(v, p);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ux = u.value(i);
    const double vx = v.value(i);
    const bool weak = ux >= eu - tol && vx < ev - tol;
    const bool strict = ux > eu + tol && vx < ev + tol;
    if (weak || strict) {
      if (witness) *witness = {p, u.alternative(i), ev - vx};
      return true;
    }
  }
  return false;
}

}  // namespace

bool less_risk_averse_oracle(const RiskAttitude& u, const RiskAttitude& v, int trials,
                             std::uint64_t seed, double tol, LotteryWitness* witness) {
  if (!u.same_alternatives(v))
    throw std::domain_error("less_risk_averse_oracle: alternative sets differ");
  if (trials < 1) throw std::invalid_argument("less_risk_averse_oracle: trials must be >= 1");
  const std::size_t n = u.size();

  for (std::size_t i = 0; i < n; ++i)
    if (lottery_violates(u, v, SimpleLottery::degenerate(u.alternative(i)), tol, witness))
      return false;

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      for (int j = 1; j < 64; ++j) {
        const double q = static_cast<double>(j) / 64.0;
        SimpleLottery p({{u.alternative(a), q}, {u.alternative(b), 1.0 - q}});
        if (lottery_violates(u, v, p, tol, witness)) return false;
      }
    }
  }

  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const int k = std::min<int>(rng.uniform_int(1, 4), static_cast<int>(n));
    // choose k distinct support indices
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (int s = 0; s < k; ++s) {
      const int r = rng.uniform_int(s, static_cast<int>(n) - 1);
      std::swap(idx[s], idx[r]);
    }
    std::vector<std::pair<double, double>> sup;
    double total = 0.0;
    std::vector<double> w(k);
    for (int s = 0; s < k; ++s) {
      w[s] = rng.uniform(1e-3, 1.0);
      total += w[s];
    }
    for (int s = 0; s < k; ++s) sup.emplace_back(u.alternative(idx[s]), w[s] / total);
    if (lottery_violates(u, v, SimpleLottery(std::move(sup)), tol, witness)) return false;
  }
  return true;
}

PiecewiseLinearFn construct_phi_greatest(const RiskAttitude& u, const RiskAttitude& v) {
  if (!u.same_alternatives(v))
    throw std::domain_error("construct_phi_greatest: alternative sets differ");
  // group by exact v-value; ties in v must not separate u
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) pairs.emplace_back(v.value(i), u.value(i));
  std::sort(pairs.begin(), pairs.end());
  std::vector<double> xs, ys;
  for (const auto& [vv, uu] : pairs) {
    if (!xs.empty() && xs.back() == vv) {
      if (std::fabs(ys.back() - uu) > 1e-9)
        throw std::domain_error("construct_phi_greatest: u is not a function of v (tie in v)");
      continue;
    }
    xs.push_back(vv);
    ys.push_back(uu);
  }
  if (xs.size() < 2)
    throw std::domain_error("construct_phi_greatest: v is constant");
  PiecewiseLinearFn phi(std::move(xs), std::move(ys));
  for (std::size_t i = 0; i + 1 < phi.knot_count(); ++i)
    if (phi.segment_slope(i) <= 0.0)
      throw std::domain_error("construct_phi_greatest: transform not strictly increasing");
  if (!pwl_is_convex(phi, 1e-12))
    throw std::domain_error("construct_phi_greatest: transform not convex (cross-ratio fails)");
  return phi;
}

std::vector<std::pair<double, double>> arrow_pratt_index(const RiskAttitude& u, double h) {
  const std::size_t n = u.size();
  if (n < 3) throw std::invalid_argument("arrow_pratt_index: needs interior grid points");
  if (!(h > 0)) throw std::invalid_argument("arrow_pratt_index: spacing must be positive");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double d = u.alternative(i + 1) - u.alternative(i);
    if (std::fabs(d - h) > 1e-9 + 1e-9 * std::fabs(h))
      throw std::invalid_argument("arrow_pratt_index: grid is not uniform with the given spacing");
  }
  std::vector<std::pair<double, double>> out;
  out.reserve(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double up = (u.value(i + 1) - u.value(i - 1)) / (2.0 * h);
    const double upp = (u.value(i + 1) - 2.0 * u.value(i) + u.value(i - 1)) / (h * h);
    if (!(up > 0.0)) throw NumericError("arrow_pratt_index: estimated u' is not positive");
    out.emplace_back(u.alternative(i), upp / up);
  }
  return out;
}

}  // namespace risklens
