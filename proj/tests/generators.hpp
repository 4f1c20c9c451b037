// Shared random-instance generators for the test and acceptance suites.
#ifndef RISKLENS_TESTS_GENERATORS_HPP
#define RISKLENS_TESTS_GENERATORS_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include "risklens/extended_cdf.hpp"
#include "risklens/preferences.hpp"
#include "risklens/rng.hpp"
#include "risklens/transformations.hpp"

namespace risklens::testgen {

// utilities on a dyadic grid so that ties and order margins are exact
inline RiskAttitude grid_attitude(int n, Rng& rng) {
  std::vector<double> alts(n), vals(n);
  for (int i = 0; i < n; ++i) {
    alts[i] = i;
    vals[i] = rng.uniform_int(0, 16) / 8.0;
  }
  return RiskAttitude(alts, vals);
}

// strictly increasing values with margins far above tolerance
inline RiskAttitude increasing_attitude(int n, Rng& rng, double first = 0.0) {
  std::vector<double> alts(n), vals(n);
  double v = first;
  for (int i = 0; i < n; ++i) {
    alts[i] = i;
    vals[i] = v;
    v += rng.uniform(0.1, 1.0);
  }
  return RiskAttitude(alts, vals);
}

// Atom-only distribution on the distinct values of v (plus -inf), in the
// canonical identified form: the level at inf v(X) carried as -inf mass, no
// atom at the top, so that F just below sup v(X) is already 1.
inline ExtendedCdf canonical_F_on(const std::vector<double>& support, Rng& rng) {
  const int m = static_cast<int>(support.size());
  std::vector<double> w(std::max(1, m - 1));
  double total = 0.0;
  for (auto& x : w) {
    x = rng.next_unit() < 0.35 ? 0.0 : rng.uniform(0.05, 1.0);
    total += x;
  }
  w[0] = std::max(w[0], 0.1);
  total = 0.0;
  for (double x : w) total += x;
  for (auto& x : w) x /= total;
  std::vector<Atom> atoms;
  for (int k = 1; k < m - 1; ++k)
    if (w[k] > 0.0) atoms.push_back(Atom{support[k], w[k]});
  return ExtendedCdf(w[0], std::move(atoms), {});
}

// general mixed distribution: -inf mass, atoms, and uniform pieces
inline ExtendedCdf mixed_cdf(Rng& rng, bool allow_neg_inf = true) {
  std::vector<double> w;
  double alpha = (allow_neg_inf && rng.next_unit() < 0.4) ? rng.uniform(0.05, 0.4) : 0.0;
  std::vector<Atom> atoms;
  std::vector<UniformPiece> pieces;
  const int na = rng.uniform_int(0, 3);
  const int np = rng.uniform_int(0, 2);
  double total = alpha;
  for (int i = 0; i < na; ++i) {
    atoms.push_back(Atom{rng.uniform(-3.0, 3.0), rng.uniform(0.05, 1.0)});
    total += atoms.back().mass;
  }
  for (int i = 0; i < np; ++i) {
    const double from = rng.uniform(-3.0, 2.0);
    pieces.push_back(UniformPiece{from, from + rng.uniform(0.3, 2.0), rng.uniform(0.05, 1.0)});
    total += pieces.back().mass;
  }
  if (atoms.empty() && pieces.empty()) {
    atoms.push_back(Atom{rng.uniform(-3.0, 3.0), 1.0});
    total += 1.0;
  }
  const double scale = (1.0 - 0.0) / total;
  alpha *= scale;
  for (auto& a : atoms) a.mass *= scale;
  for (auto& p : pieces) p.mass *= scale;
  return ExtendedCdf(alpha, std::move(atoms), std::move(pieces));
}

// masses over slots, some zeroed, normalized to 1
inline std::vector<double> random_masses(int slots, Rng& rng) {
  std::vector<double> w(slots);
  double total = 0.0;
  do {
    total = 0.0;
    for (auto& x : w) {
      x = rng.next_unit() < 0.3 ? 0.0 : rng.uniform(0.05, 1.0);
      total += x;
    }
  } while (total <= 0.0);
  for (auto& x : w) x /= total;
  return w;
}

struct DecompositionSample {
  Decomposition d;
  std::vector<double> xs;
};

// Canonical identifiable decomposition: G's level at inf X held as -inf mass
// (no atom at inf X), H supported strictly below the top two alternatives,
// H_star (optional) any CDF dominating H in FOSD and differing from it.
inline DecompositionSample random_decomposition(Rng& rng, bool with_h_star) {
  const int n = rng.uniform_int(3, 6);
  std::vector<double> xs(n);
  double x = rng.uniform(-3.0, 0.0);
  for (int i = 0; i < n; ++i) {
    xs[i] = x;
    x += rng.uniform(0.2, 1.5);
  }
  const double lambdas[] = {0.25, 0.5, 0.75, 1.0};
  const double lambda = lambdas[rng.uniform_int(0, 3)];

  std::vector<double> gw = random_masses(n, rng);
  gw[0] = std::max(gw[0], 0.05);
  double gt = 0.0;
  for (double v : gw) gt += v;
  for (auto& v : gw) v /= gt;
  std::vector<Atom> gatoms;
  for (int k = 1; k < n; ++k)
    if (gw[k] > 0.0) gatoms.push_back(Atom{xs[k], gw[k]});
  ExtendedCdf g(gw[0], std::move(gatoms), {});

  ExtendedCdf h = ExtendedCdf::point_mass(xs[0]);
  if (lambda < 1.0 && n > 2) {
    const std::vector<double> hw = random_masses(n - 2, rng);
    std::vector<Atom> hatoms;
    for (int k = 0; k < n - 2; ++k)
      if (hw[k] > 0.0) hatoms.push_back(Atom{xs[k], hw[k]});
    h = ExtendedCdf(0.0, std::move(hatoms), {});
  }

  std::optional<ExtendedCdf> hstar;
  if (with_h_star && lambda < 1.0) {
    // draw until FOSD-dominating and genuinely different
    std::vector<double> hlev(n);
    for (int k = 0; k < n; ++k) hlev[k] = h(xs[k]);
    for (int attempt = 0; attempt < 200 && !hstar; ++attempt) {
      const std::vector<double> sw = random_masses(n, rng);
      double lev = 0.0, dev = 0.0;
      bool ok = true;
      for (int k = 0; k < n; ++k) {
        lev += sw[k];
        if (lev > hlev[k] + 1e-12) {
          ok = false;
          break;
        }
        dev = std::max(dev, hlev[k] - lev);
      }
      if (ok && dev > 1e-6) {
        std::vector<Atom> satoms;
        for (int k = 0; k < n; ++k)
          if (sw[k] > 0.0) satoms.push_back(Atom{xs[k], sw[k]});
        hstar = ExtendedCdf(0.0, std::move(satoms), {});
      }
    }
  }
  return DecompositionSample{Decomposition{lambda, std::move(g), std::move(h), std::move(hstar),
                                           lambda == 1.0},
                             xs};
}

inline bool cdf_close(const ExtendedCdf& a, const ExtendedCdf& b, double tol = 1e-9) {
  if (std::abs(a.neg_inf_mass() - b.neg_inf_mass()) > tol) return false;
  std::vector<double> pts = a.breakpoints();
  for (double p : b.breakpoints()) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  for (double p : pts) {
    if (std::abs(a(p) - b(p)) > tol) return false;
    if (std::abs(a.atom_mass_at(p) - b.atom_mass_at(p)) > tol) return false;
  }
  return true;
}

}  // namespace risklens::testgen

#endif
