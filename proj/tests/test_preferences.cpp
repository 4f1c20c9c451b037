#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "risklens/preferences.hpp"

using namespace risklens;

namespace {

RiskAttitude make(std::vector<double> vals) {
  std::vector<double> alts(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) alts[i] = static_cast<double>(i);
  return RiskAttitude(alts, std::move(vals));
}

}  // namespace

TEST_CASE("expected utility") {
  const RiskAttitude id = make({0, 1, 2});
  CHECK(expected_utility(id, SimpleLottery::degenerate(1.0)) == doctest::Approx(1.0));
  const RiskAttitude u = make({0, 0.5, 1.5});
  const SimpleLottery p({{0.0, 1.0 / 3.0}, {2.0, 2.0 / 3.0}});
  CHECK(expected_utility(u, p) == doctest::Approx(1.0));
  CHECK(expected_utility(u, SimpleLottery::degenerate(2.0)) == doctest::Approx(1.5));
  CHECK_THROWS_AS(expected_utility(u, SimpleLottery::degenerate(7.0)), std::domain_error);
}

TEST_CASE("lottery invariants") {
  CHECK_THROWS_AS(SimpleLottery({{0.0, 0.5}, {1.0, 0.4}}), std::invalid_argument);
  CHECK_THROWS_AS(SimpleLottery({{0.0, -0.5}, {1.0, 1.5}}), std::invalid_argument);
}

TEST_CASE("cross-ratio worked examples") {
  const RiskAttitude id = make({0, 1, 2});
  CHECK(less_risk_averse_crossratio(id, id));
  CHECK(less_risk_averse_crossratio(make({0, 0.5, 1.5}), id));  // ratio 2 >= 1
  PrattWitness w{};
  CHECK_FALSE(less_risk_averse_crossratio(make({0, 1, 1.5}), id, 1e-9, &w));  // 0.5 < 1
  CHECK(w.x == 0.0);
  CHECK(w.y == 1.0);
  CHECK(w.z == 2.0);
}

TEST_CASE("oracle worked examples with the constructed violation lottery") {
  const RiskAttitude id = make({0, 1, 2});
  CHECK(less_risk_averse_oracle(id, id, 50, 1));
  LotteryWitness w{SimpleLottery::degenerate(0.0), 0.0, 0.0};
  CHECK_FALSE(less_risk_averse_oracle(make({0, 1, 1.5}), id, 50, 1, 1e-9, &w));
  // the violating two-point lottery puts p = (u(z)-u(y))/(u(z)-u(x)) on x
  CHECK(expected_utility(id, w.p) > 1.0);
  CHECK(less_risk_averse_oracle(make({0, 0.5, 1.5}), id, 500, 1));
}

TEST_CASE("greatest transform interpolates u through v") {
  const RiskAttitude id = make({0, 1, 2});
  const PiecewiseLinearFn phi = construct_phi_greatest(make({0, 0.5, 1.5}), id);
  REQUIRE(phi.knot_count() == 3);
  CHECK(phi.knot_x()[1] == 1.0);
  CHECK(phi.knot_y()[1] == 0.5);

  const PiecewiseLinearFn identity = construct_phi_greatest(id, id);
  CHECK(identity(0.5) == doctest::Approx(0.5));

  const RiskAttitude v10 = make({0, 10, 20});
  const RiskAttitude u = make({0, 0.5, 1.5});
  const PiecewiseLinearFn phi2 = construct_phi_greatest(u, v10);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(phi2(v10.value(i)) == doctest::Approx(u.value(i)).epsilon(1e-12));
}

TEST_CASE("greatest transform rejects bad inputs") {
  const RiskAttitude vc = make({1, 1, 1});
  CHECK_THROWS_AS(construct_phi_greatest(make({0, 0, 0}), vc), std::domain_error);
  // tie in v with differing u is not a function of v
  CHECK_THROWS_AS(construct_phi_greatest(make({0, 1, 2}), make({0, 0, 2})), std::domain_error);
  // cross-ratio failure: interpolant not convex
  CHECK_THROWS_AS(construct_phi_greatest(make({0, 1, 1.5}), make({0, 1, 2})), std::domain_error);
}

TEST_CASE("greatest transform succeeds on the finite version of the jump example") {
  // v identity on a grid of [0,1], u = v except a jump at the top
  const int n = 11;
  std::vector<double> alts(n), uvals(n);
  for (int i = 0; i < n; ++i) {
    alts[i] = i / 10.0;
    uvals[i] = i / 10.0;
  }
  uvals[n - 1] = 2.0;
  const RiskAttitude v(alts, alts);
  const RiskAttitude u(alts, uvals);
  const PiecewiseLinearFn phi = construct_phi_greatest(u, v);
  const auto segs = pwl_right_derivative(phi);
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) CHECK(segs.back().slope > segs[i].slope);
}

TEST_CASE("arrow-pratt index on cara utilities") {
  const double h = 1e-3;
  const int n = 2001;
  std::vector<double> xs(n), lin(n), cara2(n), cara1(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = -1.0 + i * h;
    lin[i] = xs[i];
    cara2[i] = -std::exp(-2.0 * xs[i]);
    cara1[i] = -std::exp(-xs[i]);
  }
  for (const auto& [x, idx] : arrow_pratt_index(RiskAttitude(xs, lin), h))
    CHECK(std::fabs(idx) < 1e-6);
  for (const auto& [x, idx] : arrow_pratt_index(RiskAttitude(xs, cara2), h))
    CHECK(idx == doctest::Approx(-2.0).epsilon(1e-3));
  for (const auto& [x, idx] : arrow_pratt_index(RiskAttitude(xs, cara1), h))
    CHECK(idx == doctest::Approx(-1.0).epsilon(1e-3));
  // decreasing utility is a numeric failure
  std::vector<double> dec(n);
  for (int i = 0; i < n; ++i) dec[i] = -xs[i];
  CHECK_THROWS(arrow_pratt_index(RiskAttitude(xs, dec), h));
  // non-uniform grid rejected
  CHECK_THROWS_AS(arrow_pratt_index(RiskAttitude({0, 1, 3}, {0, 1, 2}), 1.0),
                  std::invalid_argument);
}

TEST_CASE("pratt equivalence: cross-ratio agrees with the oracle on random instances") {
  Rng rng(31);
  for (int t = 0; t < 150; ++t) {
    const int n = rng.uniform_int(2, 6);
    const RiskAttitude u = testgen::grid_attitude(n, rng);
    const RiskAttitude v = testgen::grid_attitude(n, rng);
    const bool a = less_risk_averse_crossratio(u, v);
    const bool b = less_risk_averse_oracle(u, v, 300, 1000 + t);
    CHECK(a == b);
  }
}

TEST_CASE("whenever the greatest transform exists it reproduces u and is convex") {
  Rng rng(32);
  int built = 0;
  for (int t = 0; t < 400 && built < 80; ++t) {
    const int n = rng.uniform_int(2, 6);
    const RiskAttitude u = testgen::grid_attitude(n, rng);
    const RiskAttitude v = testgen::grid_attitude(n, rng);
    if (!less_risk_averse_crossratio(u, v) || v.is_constant(0.0)) continue;
    const PiecewiseLinearFn phi = construct_phi_greatest(u, v);
    ++built;
    CHECK(pwl_is_convex(phi, 1e-12));
    for (std::size_t i = 0; i < u.size(); ++i)
      CHECK(phi(v.value(i)) == doctest::Approx(u.value(i)).epsilon(1e-12));
  }
  CHECK(built > 20);
}

TEST_CASE("affine invariance of the cross-ratio relation") {
  Rng rng(33);
  for (int t = 0; t < 100; ++t) {
    const int n = rng.uniform_int(2, 6);
    const RiskAttitude u = testgen::grid_attitude(n, rng);
    const RiskAttitude v = testgen::grid_attitude(n, rng);
    const double a = rng.uniform(0.1, 3.0);
    const double b = rng.uniform(-2.0, 2.0);
    std::vector<double> scaled(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) scaled[i] = a * u.value(i) + b;
    const RiskAttitude au(u.alternatives(), scaled);
    CHECK(less_risk_averse_crossratio(u, v) == less_risk_averse_crossratio(au, v));
  }
}

TEST_CASE("transitivity of the relation on samples") {
  Rng rng(34);
  int hits = 0;
  for (int t = 0; t < 3000 && hits < 25; ++t) {
    const int n = rng.uniform_int(2, 5);
    const RiskAttitude u = testgen::grid_attitude(n, rng);
    const RiskAttitude v = testgen::grid_attitude(n, rng);
    const RiskAttitude w = testgen::grid_attitude(n, rng);
    if (less_risk_averse_crossratio(u, v) && less_risk_averse_crossratio(v, w)) {
      ++hits;
      CHECK(less_risk_averse_crossratio(u, w));
    }
  }
  CHECK(hits > 5);
}

TEST_CASE("constant v admits only constant u") {
  const RiskAttitude vc = make({1, 1, 1});
  CHECK(less_risk_averse_crossratio(make({2, 2, 2}), vc));
  CHECK_FALSE(less_risk_averse_crossratio(make({0, 1, 2}), vc));
}
