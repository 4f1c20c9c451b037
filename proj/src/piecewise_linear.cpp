#include "risklens/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risklens {

PiecewiseLinearFn::PiecewiseLinearFn(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  if (xs_.size() != ys_.size()) throw std::invalid_argument("pwl: knot size mismatch");
  if (xs_.size() < 2) throw std::invalid_argument("pwl: need at least two knots");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i]))
      throw std::invalid_argument("pwl: non-finite knot");
    if (i > 0 && xs_[i] <= xs_[i - 1])
      throw std::invalid_argument("pwl: knot x-values must be strictly increasing");
  }
}

double PiecewiseLinearFn::operator()(double x) const {
  // allow a hair of float dirt at the endpoints
  const double slack = 1e-9 * std::max(1.0, std::max(std::fabs(lo()), std::fabs(hi())));
  if (x < lo() - slack || x > hi() + slack)
    throw std::domain_error("pwl: query outside domain");
  x = std::clamp(x, lo(), hi());
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = (it == xs_.begin()) ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (i >= xs_.size() - 1) i = xs_.size() - 2;
  const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + t * (ys_[i + 1] - ys_[i]);
}

double PiecewiseLinearFn::segment_slope(std::size_t i) const {
  return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
}

std::vector<SlopeSegment> pwl_right_derivative(const PiecewiseLinearFn& f) {
  std::vector<SlopeSegment> out;
  out.reserve(f.knot_count() - 1);
  for (std::size_t i = 0; i + 1 < f.knot_count(); ++i)
    out.push_back(SlopeSegment{f.knot_x()[i], f.knot_x()[i + 1], f.segment_slope(i)});
  return out;
}

bool pwl_is_convex(const PiecewiseLinearFn& f, double tol) {
  if (tol < 0) throw std::invalid_argument("pwl_is_convex: negative tolerance");
  for (std::size_t i = 0; i + 2 < f.knot_count(); ++i)
    if (f.segment_slope(i + 1) < f.segment_slope(i) - tol) return false;
  return true;
}

}  // namespace risklens
