#include "risklens/extended_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risklens {

namespace {
constexpr double kMassTol = 1e-12;
}

ExtendedCdf::ExtendedCdf(double neg_inf_mass, std::vector<Atom> atoms,
                         std::vector<UniformPiece> pieces)
    : neg_inf_mass_(neg_inf_mass), atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
  if (!std::isfinite(neg_inf_mass_) || neg_inf_mass_ < -kMassTol)
    throw std::invalid_argument("ExtendedCdf: invalid -inf mass");
  neg_inf_mass_ = std::max(0.0, neg_inf_mass_);
  double total = neg_inf_mass_;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.at) || !std::isfinite(a.mass) || a.mass <= 0.0)
      throw std::invalid_argument("ExtendedCdf: atom masses must be positive and finite");
    total += a.mass;
  }
  for (const auto& p : pieces_) {
    if (!std::isfinite(p.from) || !std::isfinite(p.to) || p.from >= p.to)
      throw std::invalid_argument("ExtendedCdf: uniform piece needs from < to");
    if (!std::isfinite(p.mass) || p.mass <= 0.0)
      throw std::invalid_argument("ExtendedCdf: piece masses must be positive and finite");
    total += p.mass;
  }
  if (std::fabs(total - 1.0) > kMassTol)
    throw std::invalid_argument("ExtendedCdf: masses must sum to 1 within 1e-12");

  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.at < b.at; });
  std::vector<Atom> merged;
  for (const auto& a : atoms_) {
    if (!merged.empty() && merged.back().at == a.at)
      merged.back().mass += a.mass;
    else
      merged.push_back(a);
  }
  atoms_ = std::move(merged);
  std::sort(pieces_.begin(), pieces_.end(), [](const UniformPiece& a, const UniformPiece& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  std::vector<UniformPiece> pmerged;
  for (const auto& p : pieces_) {
    if (!pmerged.empty() && pmerged.back().from == p.from && pmerged.back().to == p.to)
      pmerged.back().mass += p.mass;
    else
      pmerged.push_back(p);
  }
  pieces_ = std::move(pmerged);

  // exact renormalization of the residual 1e-12 dirt
  if (total != 1.0) {
    neg_inf_mass_ /= total;
    for (auto& a : atoms_) a.mass /= total;
    for (auto& p : pieces_) p.mass /= total;
  }
}

ExtendedCdf ExtendedCdf::point_mass(double at) { return ExtendedCdf(0.0, {{at, 1.0}}, {}); }

ExtendedCdf ExtendedCdf::unavailable() { return ExtendedCdf(1.0, {}, {}); }

double ExtendedCdf::operator()(double k) const {
  double f = neg_inf_mass_;
  for (const auto& a : atoms_) {
    if (a.at <= k) f += a.mass;
    else break;
  }
  for (const auto& p : pieces_) {
    if (k <= p.from) continue;
    f += (k >= p.to) ? p.mass : p.mass * (k - p.from) / (p.to - p.from);
  }
  return f;
}

double ExtendedCdf::left_limit(double k) const {
  double f = neg_inf_mass_;
  for (const auto& a : atoms_) {
    if (a.at < k) f += a.mass;
    else break;
  }
  for (const auto& p : pieces_) {
    if (k <= p.from) continue;
    f += (k >= p.to) ? p.mass : p.mass * (k - p.from) / (p.to - p.from);
  }
  return f;
}

double ExtendedCdf::atom_mass_at(double k) const {
  for (const auto& a : atoms_)
    if (a.at == k) return a.mass;
  return 0.0;
}

std::vector<double> ExtendedCdf::breakpoints() const {
  std::vector<double> b;
  b.reserve(atoms_.size() + 2 * pieces_.size());
  for (const auto& a : atoms_) b.push_back(a.at);
  for (const auto& p : pieces_) {
    b.push_back(p.from);
    b.push_back(p.to);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double ExtendedCdf::upper_tail_mean(double ell) const {
  double m = 0.0;
  for (const auto& a : atoms_)
    if (a.at > ell) m += a.mass * a.at;
  for (const auto& p : pieces_) {
    if (p.to <= ell) continue;
    const double a0 = std::max(p.from, ell);
    m += p.mass / (p.to - p.from) * 0.5 * (p.to * p.to - a0 * a0);
  }
  return m;
}

double ExtendedCdf::positive_part_mean() const { return upper_tail_mean(0.0); }

double ExtendedCdf::negative_part_integral() const {
  if (neg_inf_mass_ > 0.0) return -std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (const auto& a : atoms_)
    if (a.at <= 0.0) m += a.mass * a.at;
  for (const auto& p : pieces_) {
    if (p.from >= 0.0) continue;
    const double b0 = std::min(p.to, 0.0);
    m += p.mass / (p.to - p.from) * 0.5 * (b0 * b0 - p.from * p.from);
  }
  return m;
}

double ExtendedCdf::cdf_integral(double a, double b) const {
  if (a > b) throw std::invalid_argument("cdf_integral: needs a <= b");
  if (a == b) return 0.0;
  std::vector<double> pts;
  pts.push_back(a);
  for (double bp : breakpoints())
    if (bp > a && bp < b) pts.push_back(bp);
  pts.push_back(b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    // F is linear on (pts[i], pts[i+1]); trapezoid with one-sided limits is exact
    total += 0.5 * ((*this)(pts[i]) + left_limit(pts[i + 1])) * (pts[i + 1] - pts[i]);
  }
  return total;
}

double ExtendedCdf::chi(double ell) const {
  const double m = positive_part_mean();
  if (ell <= 0.0) return m - cdf_integral(ell, 0.0);
  return m + cdf_integral(0.0, ell);
}

double ExtendedCdf::chi_inverse(double y) const {
  const std::vector<double> bps = breakpoints();
  if (bps.empty()) {
    // all mass at -inf: chi(ell) = ell
    return y;
  }
  const double chi_top = chi(bps.back());
  if (y >= chi_top) return bps.back() + (y - chi_top);
  const double chi_bot = chi(bps.front());
  if (y < chi_bot) {
    if (neg_inf_mass_ <= 0.0)
      throw std::domain_error("chi_inverse: value below inf chi(J)");
    return bps.front() - (chi_bot - y) / neg_inf_mass_;
  }
  // largest breakpoint with chi <= y, then solve inside the segment to its right
  std::size_t i = 0;
  for (std::size_t k = 0; k < bps.size(); ++k) {
    if (chi(bps[k]) <= y) i = k;
  }
  const double bi = bps[i];
  const double g = y - chi(bi);
  if (g <= 0.0) return bi;
  const double c = (*this)(bi);  // F just right of bi
  double dens = 0.0;
  for (const auto& p : pieces_)
    if (p.from <= bi && bps[i + 1] <= p.to) dens += p.mass / (p.to - p.from);
  double t;
  if (dens > 0.0) {
    t = (-c + std::sqrt(c * c + 2.0 * dens * g)) / dens;
  } else if (c > 0.0) {
    t = g / c;
  } else {
    t = 0.0;  // flat segment cannot reach y > chi(bi); numeric dirt only
  }
  return bi + t;
}

bool ExtendedCdf::concentrated_on(const SetDescriptor& s, bool allow_neg_inf) const {
  if (neg_inf_mass_ > 0.0 && !allow_neg_inf) return false;
  for (const auto& a : atoms_)
    if (!s.contains(a.at)) return false;
  for (const auto& p : pieces_)
    if (!s.contains_open_interval(p.from, p.to)) return false;
  return true;
}

PiecewiseLinearFn chi_pwl(const ExtendedCdf& f, double lo, double hi, double err_bound) {
  if (!(lo < hi)) throw std::invalid_argument("chi_pwl: needs lo < hi");
  auto chi_direct = [&f](double ell) { return f(ell) * ell + f.upper_tail_mean(ell); };
  std::vector<double> xs;
  xs.push_back(lo);
  for (double bp : f.breakpoints())
    if (bp > lo && bp < hi) xs.push_back(bp);
  xs.push_back(hi);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  if (!f.pieces().empty()) {
    // chi is quadratic between breakpoints there; the midpoint residual is the
    // exact interpolation error of a chord on a quadratic, so split until it
    // drops below the bound
    for (int round = 0; round < 40; ++round) {
      std::vector<double> refined;
      bool split_any = false;
      for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        refined.push_back(xs[i]);
        const double mid = 0.5 * (xs[i] + xs[i + 1]);
        if (mid <= xs[i] || mid >= xs[i + 1]) continue;
        const double interp = 0.5 * (chi_direct(xs[i]) + chi_direct(xs[i + 1]));
        if (std::fabs(interp - chi_direct(mid)) > err_bound) {
          refined.push_back(mid);
          split_any = true;
        }
      }
      refined.push_back(xs.back());
      xs = std::move(refined);
      if (!split_any) break;
    }
  }
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(chi_direct(x));
  return PiecewiseLinearFn(std::move(xs), std::move(ys));
}

bool fosd_leq(const ExtendedCdf& f, const ExtendedCdf& fhat, std::span<const double> grid,
              double tol) {
  if (grid.empty()) throw std::domain_error("fosd_leq: empty grid");
  std::vector<double> pts(grid.begin(), grid.end());
  for (double b : f.breakpoints()) pts.push_back(b);
  for (double b : fhat.breakpoints()) pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (double k : pts) {
    if (fhat(k) > f(k) + tol) return false;
    if (fhat.left_limit(k) > f.left_limit(k) + tol) return false;
  }
  return true;
}

bool rhr_geq(const ExtendedCdf& f, const ExtendedCdf& fhat, std::span<const double> k_points,
             double tol) {
  for (std::size_t i = 0; i < k_points.size(); ++i) {
    for (std::size_t j = i + 1; j < k_points.size(); ++j) {
      const double k = std::min(k_points[i], k_points[j]);
      const double l = std::max(k_points[i], k_points[j]);
      if (k == l) continue;
      if (f(l) * fhat(k) > f(k) * fhat(l) + tol) return false;
    }
  }
  return true;
}

}  // namespace risklens
