#include <cmath>
#include <sstream>

#include "doctest.h"
#include "geoflow/registry.hpp"
#include "geoflow/soliton.hpp"

using namespace geoflow;

namespace {
const RadialProfile kOne = RadialProfile::constant(1.0);

Jet2 cigar_jet(double r) {
  const double d = 1.0 + r * r;
  return {-std::log(d), -2.0 * r / d, (2.0 * r * r - 2.0) / (d * d)};
}
}  // namespace

TEST_CASE("radial residual vanishes on trivial data") {
  const SolitonParams params = SolitonParams::steady();
  MapJet2 phi;
  phi.v = {0.4};
  phi.d1 = {0.0};
  phi.d2 = {0.0};
  for (double r : {0.3, 1.0, 4.0}) {
    const RadialResidual res = radial_residual(kOne, kOne, Jet2{0, 0, 0}, phi, params, 3, r);
    CHECK(res.e1 == 0.0);
    CHECK(res.e2[0] == 0.0);
  }
}

TEST_CASE("gaussian shrinker solves the first radial equation") {
  const SolitonParams params = SolitonParams::shrinking(0.0);
  MapJet2 phi;
  for (double r : {0.05, 0.8, 2.7, 4.9}) {
    const Jet2 f{r * r / 4.0, r / 2.0, 0.5};
    const RadialResidual res = radial_residual(kOne, kOne, f, phi, params, 3, r);
    CHECK(std::abs(res.e1) < 1e-15);
  }
}

TEST_CASE("cigar steady soliton solves the first radial equation pointwise") {
  const RadialProfile F = make_profile("cigar");
  const SolitonParams params = SolitonParams::steady();
  MapJet2 phi;
  for (int i = 0; i <= 200; ++i) {
    const double r = 0.01 + i * (10.0 - 0.01) / 200.0;
    const RadialResidual res = radial_residual(F, kOne, cigar_jet(r), phi, params, 2, r);
    CHECK(std::abs(res.e1) < 1e-13);
  }
}

TEST_CASE("off-diagonal bracket vanishes on the gaussian and cigar") {
  MapJet2 phi;
  const Jet2 fg{0.25, 0.5, 0.5};  // f = r^2/4 at r = 1
  CHECK(std::abs(radial_offdiag_bracket(kOne, kOne, fg, phi, 0.0, 3, 1.0)) < 1e-15);
  const RadialProfile F = make_profile("cigar");
  for (double r : {0.4, 1.0, 3.0})
    CHECK(std::abs(radial_offdiag_bracket(F, kOne, cigar_jet(r), phi, 0.0, 2, r)) < 1e-13);
}

TEST_CASE("integrator recovers the gaussian potential from a regular start") {
  SolitonInit init;
  const SolitonSolution sol =
      integrate_soliton(kOne, kOne, SolitonParams::shrinking(0.0), 3, 0.01, 5.0, init,
                        IntegrateOptions{1e-10, 1e-12, 0.0, true, 100000});
  CHECK(sol.residual_sup < 1e-9);
  const double c = sol.f.front() - sol.r.front() * sol.r.front() / 4.0;
  for (size_t i = 0; i < sol.r.size(); ++i)
    CHECK(std::abs(sol.f[i] - (sol.r[i] * sol.r[i] / 4.0 + c)) < 1e-9);
}

TEST_CASE("integrator tracks the cigar potential") {
  const RadialProfile F = make_profile("cigar");
  SolitonInit init;
  init.f0 = -std::log(1.0 + 0.01 * 0.01);
  init.fp0 = -2.0 * 0.01 / (1.0 + 0.01 * 0.01);
  const SolitonSolution sol = integrate_soliton(F, kOne, SolitonParams::steady(), 2, 0.01, 10.0,
                                                init);
  CHECK(sol.residual_sup < 1e-8);
  for (size_t i = 0; i < sol.r.size(); ++i)
    CHECK(std::abs(sol.f[i] + std::log(1.0 + sol.r[i] * sol.r[i])) < 1e-8);
}

TEST_CASE("nonconstant radial map solves the explicit harmonic ODE") {
  // m = 3, flat, steady, phi' (1) = 1 gives phi'(r) = 1/r^2
  SolitonInit init;
  init.f0 = 0.0;
  init.fp0 = 0.0;
  init.phi0 = {0.0};
  init.phip0 = {1.0};
  const SolitonSolution sol =
      integrate_soliton(kOne, kOne, SolitonParams::steady(), 3, 1.0, 4.0, init);
  for (size_t i = 0; i < sol.r.size(); ++i)
    CHECK(sol.phip[i][0] == doctest::Approx(1.0 / (sol.r[i] * sol.r[i])).epsilon(1e-8));
  // spot value from the statement: phi'(2) = 0.25
  double at2 = 0.0;
  for (size_t i = 0; i < sol.r.size(); ++i)
    if (std::abs(sol.r[i] - 2.0) < 0.2) at2 = sol.phip[i][0] * sol.r[i] * sol.r[i];
  CHECK(at2 == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("fixed-step integrator converges at order >= 4") {
  auto run = [](double h) {
    SolitonInit init;
    init.f0 = -std::log(1.0 + 0.25);
    init.fp0 = -2.0 * 0.5 / 1.25;
    IntegrateOptions opts;
    opts.fixed_step = h;
    const SolitonSolution sol = integrate_soliton(make_profile("cigar"), kOne,
                                                  SolitonParams::steady(), 2, 0.5, 4.0, init,
                                                  opts);
    return std::abs(sol.f.back() + std::log(1.0 + 16.0));
  };
  const double order = std::log2(run(0.02) / run(0.01));
  CHECK(order >= 4.0);
}

TEST_CASE("residual certificate is reproducible from the stored grids") {
  SolitonInit init;
  init.phi0 = {0.2};
  init.phip0 = {0.3};
  init.f0 = 0.0;
  init.fp0 = 0.1;
  const SolitonSolution sol =
      integrate_soliton(kOne, kOne, SolitonParams::steady(), 3, 0.5, 3.0, init);
  const double again = recompute_residual_sup(sol, kOne, kOne, SolitonParams::steady(), 3);
  CHECK(std::abs(again - sol.residual_sup) < 1e-12);
}

TEST_CASE("columnar serialization round-trips") {
  SolitonInit init;
  init.phi0 = {0.1};
  init.phip0 = {0.05};
  const SolitonSolution sol =
      integrate_soliton(kOne, kOne, SolitonParams::shrinking(0.0), 3, 0.1, 2.0, init);
  std::stringstream ss;
  sol.write(ss);
  const SolitonSolution back = SolitonSolution::read(ss);
  REQUIRE(back.r.size() == sol.r.size());
  CHECK(back.n_target == 1);
  for (size_t i = 0; i < sol.r.size(); ++i) {
    CHECK(back.r[i] == sol.r[i]);
    CHECK(back.f[i] == sol.f[i]);
    CHECK(back.phip[i][0] == sol.phip[i][0]);
  }
}

TEST_CASE("cartesian residual vanishes on the gaussian shrinker") {
  const ScalarField f = ScalarField::radial(RadialProfile::make(
      [](double r) { return r * r / 4.0; }, [](double r) { return r / 2.0; },
      [](double) { return 0.5; }));
  const MapField phi = MapField::constant({0.0}, 3);
  const CartesianResidual res = cartesian_residual(kOne, kOne, f, phi,
                                                   SolitonParams::shrinking(0.0), 3,
                                                   {1.0, 1.0, 0.0});
  for (double v : res.e1.a) CHECK(std::abs(v) < 1e-10);
  for (double v : res.e2) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("cartesian residual decomposes into the radial pieces") {
  // generic radial data: E1 = bracket * x x^T / r^2 + e1 * identity
  const RadialProfile F = RadialProfile::make(
      [](double r) { return 1.0 + 0.3 * r * r; }, [](double r) { return 0.6 * r; },
      [](double) { return 0.6; });
  const RadialProfile fpr = RadialProfile::make(
      [](double r) { return 0.2 * r * r + 0.05 * r * r * r * r; },
      [](double r) { return 0.4 * r + 0.2 * r * r * r; },
      [](double r) { return 0.4 + 0.6 * r * r; });
  const ScalarField f = ScalarField::radial(fpr);
  const MapField phi = MapField::constant({0.0}, 3);
  const SolitonParams params = SolitonParams::steady();
  const Vec x = {0.9, 0.5, -0.3};
  const double r = norm(x);
  const CartesianResidual full = cartesian_residual(F, kOne, f, phi, params, 3, x);

  const Jet2 fj{fpr.value(r), fpr.d1(r), fpr.d2(r)};
  MapJet2 pj;
  const RadialResidual rad = radial_residual(F, kOne, fj, pj, params, 3, r);
  const double bracket = radial_offdiag_bracket(F, kOne, fj, pj, 0.0, 3, r);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double expect = bracket * x[i] * x[j] / (r * r) + (i == j ? rad.e1 : 0.0);
      CHECK(full.e1(i, j) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("map through the target origin with curved target is rejected") {
  const RadialProfile G = RadialProfile::make(
      [](double rho) { return 1.0 + rho * rho; }, [](double rho) { return 2.0 * rho; },
      [](double) { return 2.0; });
  MapJet2 phi;
  phi.v = {0.0};
  phi.d1 = {1.0};
  phi.d2 = {0.0};
  CHECK_THROWS_AS(
      radial_residual(kOne, G, Jet2{0, 0, 0}, phi, SolitonParams::steady(), 3, 1.0),
      std::domain_error);
}

TEST_CASE("soliton params validation") {
  SolitonParams bad = SolitonParams::shrinking(0.0);
  bad.lambda = 0.3;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(radial_residual(kOne, kOne, Jet2{}, MapJet2{}, SolitonParams::steady(), 3, -1.0),
                  std::domain_error);
}
