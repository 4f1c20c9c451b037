#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risklens/piecewise_linear.hpp"
#include "risklens/rng.hpp"
#include "risklens/set_descriptor.hpp"

using namespace risklens;

namespace {

// random finite union of points and intervals inside [-4, 4]
SetDescriptor random_set(Rng& rng) {
  std::vector<SetComponent> parts;
  const int m = rng.uniform_int(1, 4);
  for (int i = 0; i < m; ++i) {
    const double a = rng.uniform(-4.0, 4.0);
    if (rng.next_unit() < 0.4) {
      parts.push_back(SetComponent{a, a, true, true});
    } else {
      const double b = a + rng.uniform(0.1, 2.0);
      parts.push_back(SetComponent{a, b, rng.next_unit() < 0.5, rng.next_unit() < 0.5});
    }
  }
  return SetDescriptor(std::move(parts));
}

}  // namespace

TEST_CASE("cotwo on the isolated-worst-point example") {
  // {0} u (1, 2]
  SetDescriptor a({SetComponent{0, 0, true, true}, SetComponent{1, 2, false, true}});
  const SetDescriptor c = cotwo(a);
  CHECK(c == a);
  CHECK(inftwo(a) == 1.0);
}

TEST_CASE("cotwo of a convex set is the set itself") {
  const SetDescriptor a = SetDescriptor::interval(0, 1, true, true);
  CHECK(cotwo(a) == a);
  CHECK(inftwo(a) == 0.0);
}

TEST_CASE("cotwo of a finite set is its convex hull") {
  const SetDescriptor a = SetDescriptor::finite({0, 1, 2});
  CHECK(cotwo(a) == SetDescriptor::interval(0, 2, true, true));
  CHECK(inftwo(a) == 0.0);
}

TEST_CASE("empty set is a domain error") {
  CHECK_THROWS_AS(cotwo(SetDescriptor()), std::domain_error);
  CHECK_THROWS_AS(inftwo(SetDescriptor()), std::domain_error);
}

TEST_CASE("cotwo is idempotent and nested between A and co(A)") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const SetDescriptor a = random_set(rng);
    const SetDescriptor c = cotwo(a);
    CHECK(cotwo(c) == c);
    const SetDescriptor hull = a.convex_hull();
    for (int s = 0; s < 50; ++s) {
      const double x = rng.uniform(-4.5, 6.5);
      if (a.contains(x)) CHECK(c.contains(x));
      if (c.contains(x)) CHECK(hull.contains(x));
    }
  }
}

TEST_CASE("co(A) minus cotwo(A) is exactly (inf A, inftwo A]") {
  Rng rng(12);
  for (int t = 0; t < 300; ++t) {
    const SetDescriptor a = random_set(rng);
    const SetDescriptor c = cotwo(a);
    const SetDescriptor hull = a.convex_hull();
    const double m1 = a.inf();
    const double m2 = inftwo(a);
    for (int s = 0; s < 60; ++s) {
      const double x = rng.uniform(-4.5, 6.5);
      const bool in_gap = hull.contains(x) && !c.contains(x);
      const bool in_interval = x > m1 && x <= m2;
      CHECK(in_gap == in_interval);
    }
  }
}

TEST_CASE("finite sets with at least two elements always take the second branch") {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    const int n = rng.uniform_int(2, 6);
    std::vector<double> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.uniform(-3.0, 3.0));
    const SetDescriptor a = SetDescriptor::finite(pts);
    if (a.parts().size() < 2) continue;
    CHECK(cotwo(a) == a.convex_hull());
    CHECK(inftwo(a) == a.inf());
  }
}

TEST_CASE("pwl right derivative per segment") {
  PiecewiseLinearFn f({0, 1, 2}, {0, 0.5, 1.5});
  const auto segs = pwl_right_derivative(f);
  REQUIRE(segs.size() == 2);
  CHECK(segs[0].slope == doctest::Approx(0.5));
  CHECK(segs[0].lo == 0.0);
  CHECK(segs[0].hi == 1.0);
  CHECK(segs[1].slope == doctest::Approx(1.0));

  PiecewiseLinearFn id({0, 1}, {0, 1});
  CHECK(pwl_right_derivative(id)[0].slope == doctest::Approx(1.0));

  PiecewiseLinearFn flat_top({0, 1, 2}, {0, 1, 1});
  CHECK(pwl_right_derivative(flat_top)[0].slope == doctest::Approx(1.0));
  CHECK(pwl_right_derivative(flat_top)[1].slope == doctest::Approx(0.0));
}

TEST_CASE("pwl convexity check") {
  CHECK(pwl_is_convex(PiecewiseLinearFn({0, 1, 2}, {0, 0.5, 1.5}), 1e-12));
  CHECK_FALSE(pwl_is_convex(PiecewiseLinearFn({0, 1, 2}, {0, 1, 1.5}), 1e-12));
  CHECK(pwl_is_convex(PiecewiseLinearFn({0, 1, 2}, {0, 1, 2}), 1e-12));  // affine
}

TEST_CASE("pwl rejects degenerate domains and out-of-domain queries") {
  CHECK_THROWS_AS(PiecewiseLinearFn({0}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(PiecewiseLinearFn({0, 0}, {0, 1}), std::invalid_argument);
  PiecewiseLinearFn f({0, 1}, {0, 1});
  CHECK_THROWS_AS(f(2.0), std::domain_error);
  CHECK_THROWS_AS(f(-1.0), std::domain_error);
}

TEST_CASE("integrating the right derivative reconstructs the function at knots") {
  Rng rng(14);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.uniform_int(2, 8);
    std::vector<double> xs(n), ys(n);
    xs[0] = rng.uniform(-2, 0);
    ys[0] = rng.uniform(-1, 1);
    for (int i = 1; i < n; ++i) {
      xs[i] = xs[i - 1] + rng.uniform(0.1, 1.5);
      ys[i] = ys[i - 1] + rng.uniform(-1.0, 1.5);
    }
    PiecewiseLinearFn f(xs, ys);
    const auto segs = pwl_right_derivative(f);
    double acc = ys[0];
    for (std::size_t i = 0; i < segs.size(); ++i) {
      acc += segs[i].slope * (segs[i].hi - segs[i].lo);
      CHECK(acc == doctest::Approx(ys[i + 1]).epsilon(1e-12));
    }
  }
}
