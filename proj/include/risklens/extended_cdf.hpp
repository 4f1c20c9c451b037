#ifndef RISKLENS_EXTENDED_CDF_HPP
#define RISKLENS_EXTENDED_CDF_HPP

#include <span>
#include <vector>

#include "risklens/piecewise_linear.hpp"
#include "risklens/set_descriptor.hpp"

namespace risklens {

struct Atom {
  double at;
  double mass;
};

struct UniformPiece {
  double from;
  double to;
  double mass;
};

// Distribution of a [-inf, +inf)-valued random variable, as a finite mixture:
// a probability alpha of -inf, finitely many atoms, and finitely many uniform
// pieces. Every construction in this library stays inside this class.
//
// The induced CDF is
//   F(k) = alpha + sum_{at <= k} mass + sum_pieces mass * clamp((k-from)/(to-from), 0, 1),
// increasing, right-continuous, with F -> 1 as k -> +inf.
class ExtendedCdf {
 public:
  ExtendedCdf(double neg_inf_mass, std::vector<Atom> atoms, std::vector<UniformPiece> pieces);

  static ExtendedCdf point_mass(double at);
  static ExtendedCdf unavailable();  // all mass at -inf, F == 1

  double neg_inf_mass() const { return neg_inf_mass_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<UniformPiece>& pieces() const { return pieces_; }

  double operator()(double k) const;   // F(k)
  double left_limit(double k) const;   // F(k-)
  double atom_mass_at(double k) const;

  // locations where F can change shape: atom positions and piece endpoints
  std::vector<double> breakpoints() const;

  double positive_part_mean() const;        // int_(0,inf) k dF, always finite here
  double upper_tail_mean(double ell) const; // int_(ell,inf) k dF
  // int_(-inf,0] k dF; -infinity (as -HUGE_VAL) when neg_inf_mass > 0
  double negative_part_integral() const;
  // int_a^b F(k) dk for a <= b, exact on the mixture class
  double cdf_integral(double a, double b) const;

  // chi(ell) = int max{ell,k} dF via the integration-by-parts closed form
  //   chi(ell) = positive_part_mean - int_ell^0 F.
  double chi(double ell) const;

  // Inverse of chi restricted to J = {k : F(k) > 0}: the largest ell with
  // chi(ell) <= y, which picks the J-point when chi is flat below it.
  // Throws if y lies below inf chi(J).
  double chi_inverse(double y) const;

  bool concentrated_on(const SetDescriptor& s, bool allow_neg_inf) const;

 private:
  double neg_inf_mass_ = 0.0;
  std::vector<Atom> atoms_;
  std::vector<UniformPiece> pieces_;
};

// chi restricted to [lo, hi] as a piecewise-linear function, built from the
// direct rule chi(ell) = F(ell)*ell + int_(ell,inf) k dF at each knot. Exact
// for atom-only F; with uniform pieces the knot grid is refined until the
// interpolation error is below err_bound (midpoint-residual estimate).
PiecewiseLinearFn chi_pwl(const ExtendedCdf& f, double lo, double hi, double err_bound = 1e-9);

// true iff fhat(k) <= f(k) at every grid point and breakpoint, including left
// limits (fhat first-order stochastically dominates f). Empty grid is an error.
bool fosd_leq(const ExtendedCdf& f, const ExtendedCdf& fhat, std::span<const double> grid,
              double tol = 1e-9);

// Reverse hazard rate order on the finite set K: true iff
// f(l)*fhat(k) <= f(k)*fhat(l) + tol for all k < l in K (fhat better than f).
bool rhr_geq(const ExtendedCdf& f, const ExtendedCdf& fhat, std::span<const double> k_points,
             double tol = 1e-9);

}  // namespace risklens

#endif
