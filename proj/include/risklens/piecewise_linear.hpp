#ifndef RISKLENS_PIECEWISE_LINEAR_HPP
#define RISKLENS_PIECEWISE_LINEAR_HPP

#include <cstddef>
#include <vector>

namespace risklens {

// Continuous piecewise-linear function on a closed interval, stored as a
// knot list with strictly increasing x. Queries outside the domain throw.
class PiecewiseLinearFn {
 public:
  PiecewiseLinearFn(std::vector<double> xs, std::vector<double> ys);

  double lo() const { return xs_.front(); }
  double hi() const { return xs_.back(); }
  std::size_t knot_count() const { return xs_.size(); }
  const std::vector<double>& knot_x() const { return xs_; }
  const std::vector<double>& knot_y() const { return ys_; }

  double operator()(double x) const;

  // slope of segment i, between knots i and i+1
  double segment_slope(std::size_t i) const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

struct SlopeSegment {
  double lo;
  double hi;
  double slope;
};

// Right-hand derivative as a step function: on [knot_i, knot_{i+1}) the value
// is the slope of the segment to the right.
std::vector<SlopeSegment> pwl_right_derivative(const PiecewiseLinearFn& f);

// true iff segment slopes are non-decreasing within tol
bool pwl_is_convex(const PiecewiseLinearFn& f, double tol);

}  // namespace risklens

#endif
