#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "geoflow/numerics.hpp"

using namespace geoflow;

TEST_CASE("ode45 integrates the exponential to tight tolerance") {
  auto rhs = [](double, const Vec& y, Vec& dy) { dy = {y[0]}; };
  const OdeResult res = ode45(rhs, 0.0, 1.0, {1.0});
  REQUIRE(res.ok);
  CHECK(std::abs(res.y[0] - std::exp(1.0)) < 1e-9);
}

TEST_CASE("ode45 reverse-time integration inverts the flow") {
  auto rhs = [](double t, const Vec& y, Vec& dy) { dy = {std::sin(t) * y[0]}; };
  const OdeResult fwd = ode45(rhs, 0.0, 2.0, {1.3});
  REQUIRE(fwd.ok);
  const OdeResult bwd = ode45(rhs, 2.0, 0.0, fwd.y);
  REQUIRE(bwd.ok);
  CHECK(std::abs(bwd.y[0] - 1.3) < 1e-9);
}

TEST_CASE("ode45 fixed-step order is at least four") {
  auto rhs = [](double t, const Vec& y, Vec& dy) { dy = {y[0] * std::cos(t)}; };
  auto err = [&](double h) {
    OdeOptions o;
    o.fixed_step = h;
    const OdeResult r = ode45(rhs, 0.0, 2.0, {1.0}, o);
    return std::abs(r.y[0] - std::exp(std::sin(2.0)));
  };
  const double order = std::log2(err(0.05) / err(0.025));
  CHECK(order > 4.0);
}

TEST_CASE("brent finds the root of a transcendental function") {
  const double r = brent_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0);
  CHECK(std::abs(std::cos(r) - r) < 1e-12);
}

TEST_CASE("brent requires a sign change") {
  CHECK_THROWS_AS(brent_root([](double x) { return 1.0 + x * x; }, 0.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("tridiagonal solver reproduces a known solution") {
  std::vector<double> a = {0, 1, 1, 1};
  std::vector<double> b = {4, 4, 4, 4};
  std::vector<double> c = {1, 1, 1, 0};
  // rhs for x = (1, 2, 3, 4)
  std::vector<double> d = {4 * 1 + 2, 1 + 8 + 3, 2 + 12 + 4, 3 + 16.0};
  solve_tridiag(a, b, c, d);
  CHECK(std::abs(d[0] - 1) < 1e-13);
  CHECK(std::abs(d[3] - 4) < 1e-13);
}

TEST_CASE("not-a-knot spline reproduces cubics exactly") {
  std::vector<double> x, y;
  for (int i = 0; i <= 12; ++i) {
    const double t = -1.0 + 2.0 * i / 12.0;
    x.push_back(t);
    y.push_back(2.0 + t - 0.5 * t * t + 0.25 * t * t * t);
  }
  CubicSpline sp;
  sp.build(x, y);
  for (double t : {-0.93, -0.2, 0.41, 0.88}) {
    CHECK(std::abs(sp.eval(t) - (2.0 + t - 0.5 * t * t + 0.25 * t * t * t)) < 1e-12);
    CHECK(std::abs(sp.deriv(t) - (1.0 - t + 0.75 * t * t)) < 1e-11);
    CHECK(std::abs(sp.deriv2(t) - (-1.0 + 1.5 * t)) < 1e-10);
  }
}

TEST_CASE("spline derivatives converge on a smooth function") {
  auto build_err = [](int n) {
    std::vector<double> x, y;
    for (int i = 0; i <= n; ++i) {
      const double t = 4.0 * i / n;
      x.push_back(t);
      y.push_back(std::sin(t));
    }
    CubicSpline sp;
    sp.build(x, y);
    double worst = 0.0;
    for (int i = 1; i < 40; ++i) {
      const double t = 4.0 * i / 40.0;
      worst = std::max(worst, std::abs(sp.deriv2(t) + std::sin(t)));
    }
    return worst;
  };
  CHECK(build_err(160) < build_err(80) / 3.0);
}

TEST_CASE("periodic cubic interpolation hits the nodes") {
  std::vector<double> y;
  for (int i = 0; i < 16; ++i) y.push_back(std::sin(2.0 * M_PI * i / 16.0));
  for (int i = 0; i < 16; ++i) CHECK(std::abs(periodic_cubic(y, i) - y[i]) < 1e-14);
  CHECK(std::abs(periodic_cubic(y, 15.5) - periodic_cubic(y, -0.5)) < 1e-14);
}

TEST_CASE("simpson quadrature is exact on cubics and accurate on sin") {
  CHECK(std::abs(simpson([](double x) { return x * x * x; }, 0.0, 2.0, 8) - 4.0) < 1e-13);
  CHECK(std::abs(simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 512) - 2.0) < 1e-10);
}

TEST_CASE("splitmix is deterministic") {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 8; ++i) CHECK(a.next() == b.next());
}
