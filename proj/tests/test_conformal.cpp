#include <cmath>

#include "doctest.h"
#include "geoflow/conformal.hpp"
#include "geoflow/oracles.hpp"
#include "geoflow/registry.hpp"

using namespace geoflow;

namespace {
const AmbientMetric kFlat2 = AmbientMetric::euclidean(2);
const AmbientMetric kFlat3 = AmbientMetric::euclidean(3);
AmbientMetric cigar2() { return {2, make_profile("cigar")}; }
AmbientMetric round3() { return {3, make_profile("round_sphere_chart")}; }
}  // namespace

TEST_CASE("christoffel symbols vanish for the flat metric") {
  const Rank3 g = christoffel(kFlat3, {0.3, -0.2, 0.9});
  for (double v : g.a) CHECK(v == 0.0);
}

TEST_CASE("christoffel symbols match the finite-difference oracle") {
  const Vec pts2 = {1.0, 0.0};
  const Rank3 a = christoffel(cigar2(), pts2);
  const Rank3 b = oracles::christoffel_fd(cigar2(), pts2);
  for (size_t i = 0; i < a.a.size(); ++i) CHECK(std::abs(a.a[i] - b.a[i]) < 1e-8);

  const Vec pts3 = {0.5, 0.0, 0.0};
  const Rank3 c = christoffel(round3(), pts3);
  const Rank3 d = oracles::christoffel_fd(round3(), pts3);
  for (size_t i = 0; i < c.a.size(); ++i) CHECK(std::abs(c.a[i] - d.a[i]) < 1e-8);

  // symmetry in the lower pair
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(c(k, i, j) == doctest::Approx(c(k, j, i)).epsilon(1e-14));
}

TEST_CASE("ricci tensor: flat, round sphere chart, cigar") {
  const SymTensor zero = ricci(kFlat3, {0.4, 0.1, -0.7});
  for (double v : zero.a) CHECK(v == 0.0);

  // round chart has Ric = 2 g (constant curvature one)
  const Vec x = {0.3, 0.0, 0.0};
  const SymTensor ric = ricci(round3(), x);
  const double F = round3().factor.value(0.3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(ric(i, j) == doctest::Approx(i == j ? 2.0 / (F * F) : 0.0).epsilon(1e-12));

  // cigar: Ric = K g with K = 2 / (1 + r^2)
  const Vec y = {1.0, 0.0};
  const SymTensor rc = ricci(cigar2(), y);
  const double Fc = cigar2().factor.value(1.0);
  const double K = 2.0 / (1.0 + 1.0);
  CHECK(rc(0, 0) == doctest::Approx(K / (Fc * Fc)).epsilon(1e-12));
  CHECK(rc(1, 1) == doctest::Approx(K / (Fc * Fc)).epsilon(1e-12));
  CHECK(std::abs(rc(0, 1)) < 1e-14);
}

TEST_CASE("ricci matches the brute-force Riemann contraction") {
  for (const Vec& x : {Vec{0.7, 0.4}, Vec{1.3, -0.5}}) {
    const SymTensor a = ricci(cigar2(), x);
    const SymTensor b = oracles::ricci_from_riemann_fd(cigar2(), x);
    for (size_t i = 0; i < a.a.size(); ++i) CHECK(std::abs(a.a[i] - b.a[i]) < 1e-8);
  }
  for (const Vec& x : {Vec{0.3, 0.2, 0.1}, Vec{0.5, -0.3, 0.4}}) {
    const SymTensor a = ricci(round3(), x);
    const SymTensor b = oracles::ricci_from_riemann_fd(round3(), x);
    for (size_t i = 0; i < a.a.size(); ++i) CHECK(std::abs(a.a[i] - b.a[i]) < 1e-8);
  }
}

TEST_CASE("gauss curvature of the registry surfaces") {
  CHECK(gauss_curvature_2d(kFlat2, {0.3, 0.4}) == 0.0);
  const AmbientMetric half_round{2, make_profile("round_sphere_chart")};
  for (double r : {0.1, 0.7, 1.4})
    CHECK(gauss_curvature_2d(half_round, {r, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gauss_curvature_2d(cigar2(), {0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(gauss_curvature_2d(cigar2(), {1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(gauss_curvature_2d(kFlat3, {0.1, 0.2, 0.3}), std::invalid_argument);
}

TEST_CASE("gauss curvature is consistent with ricci in 2d") {
  for (double r : {0.2, 0.9, 2.4}) {
    const Vec x = {r * 0.6, r * 0.8};
    const double K = gauss_curvature_2d(cigar2(), x);
    const SymTensor ric = ricci(cigar2(), x);
    const double F = cigar2().factor.value(r);
    CHECK(ric(0, 0) == doctest::Approx(K / (F * F)).epsilon(1e-11));
  }
}

TEST_CASE("hessian: euclidean cases and the cigar soliton identity") {
  ScalarField h;
  const RadialProfile sq = RadialProfile::make([](double r) { return 0.5 * r * r; },
                                               [](double r) { return r; },
                                               [](double) { return 1.0; });
  h = ScalarField::radial(sq);
  const SymTensor id = hessian(kFlat3, h, {0.2, -0.4, 0.5});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(id(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  const ScalarField lin = ScalarField::linear({1.0, 2.0, -3.0});
  const SymTensor zero = hessian(kFlat3, lin, {0.2, -0.4, 0.5});
  for (double v : zero.a) CHECK(v == 0.0);

  // cigar: Ric + hess f = 0 for f = -log(1 + r^2)
  const Ambient amb = make_static_ambient("cigar", 2);
  const Vec x = {1.0, 0.0};
  const SymTensor hf = hessian(amb.g, amb.f, x);
  const SymTensor ric = ricci(amb.g, x);
  for (size_t i = 0; i < hf.a.size(); ++i)
    CHECK(hf.a[i] + ric.a[i] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hessian matches the finite-difference oracle") {
  const Ambient amb = make_static_ambient("cigar", 2);
  for (const Vec& x : {Vec{0.8, 0.3}, Vec{1.6, -0.9}}) {
    const SymTensor a = hessian(amb.g, amb.f, x);
    const SymTensor b = oracles::hessian_fd(amb.g, amb.f, x);
    for (size_t i = 0; i < a.a.size(); ++i) CHECK(std::abs(a.a[i] - b.a[i]) < 1e-8);
  }
}

TEST_CASE("grad_laplacian basics and trace consistency") {
  const RadialProfile sq = RadialProfile::make([](double r) { return r * r; },
                                               [](double r) { return 2.0 * r; },
                                               [](double) { return 2.0; });
  const ScalarField h = ScalarField::radial(sq);
  const GradLap gl = grad_laplacian(kFlat3, h, {1.0, 0.3, -0.2});
  CHECK(gl.lap == doctest::Approx(6.0).epsilon(1e-13));

  const ScalarField lin = ScalarField::linear({1.0, 0.0, 0.0});
  CHECK(grad_laplacian(kFlat3, lin, {0.5, 0.5, 0.5}).grad_norm2 == doctest::Approx(1.0));

  // trace of the hessian against g equals the laplacian
  const AmbientMetric rs = round3();
  const Vec x = {1.0, 0.0, 0.0};
  const SymTensor hess_h = hessian(rs, h, x);
  const double F = rs.factor.value(1.0);
  double tr = 0.0;
  for (int i = 0; i < 3; ++i) tr += F * F * hess_h(i, i);
  const GradLap gl2 = grad_laplacian(rs, h, x);
  CHECK(tr == doctest::Approx(gl2.lap).epsilon(1e-10));
}

TEST_CASE("tension field: constant, isometry, radial substitution") {
  const TargetMetric flat_target = TargetMetric::euclidean(2);
  const MapField cphi = MapField::constant({0.3, 0.4}, 3);
  const Vec tau = tension_field(cphi, kFlat3, flat_target, {0.5, 0.2, 0.1});
  for (double v : tau) CHECK(v == 0.0);

  // identity map between equal conformal factors is harmonic
  const RadialProfile F = make_profile("round_sphere_chart");
  const AmbientMetric g{3, F};
  const TargetMetric gamma{3, F};
  std::vector<ScalarField> comps;
  for (int i = 0; i < 3; ++i) {
    Vec e(3, 0.0);
    e[i] = 1.0;
    comps.push_back(ScalarField::linear(e));
  }
  const MapField ident = MapField::componentwise(comps, 3);
  const Vec tau_id = tension_field(ident, g, gamma, {0.4, 0.1, -0.3});
  for (double v : tau_id) CHECK(std::abs(v) < 1e-12);

  // radial map on flat space: tau^1 = phi'' + (2/r) phi'
  const RadialProfile id_prof = RadialProfile::make([](double r) { return r; },
                                                    [](double) { return 1.0; },
                                                    [](double) { return 0.0; }, false);
  const MapField rad = MapField::radial(id_prof, {1.0, 0.0}, 3);
  const Vec tau_rad = tension_field(rad, kFlat3, flat_target, {1.0, 0.0, 0.0});
  CHECK(tau_rad[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(tau_rad[1]) < 1e-14);
}

TEST_CASE("tension of affine maps between euclidean factors vanishes") {
  const TargetMetric flat_target = TargetMetric::euclidean(2);
  std::vector<ScalarField> comps = {ScalarField::linear({1.0, -2.0, 0.5}, 0.3),
                                    ScalarField::linear({0.0, 1.0, 1.0}, -1.0)};
  const MapField aff = MapField::componentwise(comps, 3);
  for (const Vec& x : {Vec{0.1, 0.2, 0.3}, Vec{-1.0, 0.5, 2.0}}) {
    const Vec tau = tension_field(aff, kFlat3, flat_target, x);
    for (double v : tau) CHECK(std::abs(v) < 1e-14);
  }
}

TEST_CASE("phi pullback tensor and trace") {
  const TargetMetric flat_target = TargetMetric::euclidean(2);
  const MapField cphi = MapField::constant({0.0, 0.0}, 2);
  const Pullback zero = phi_pullback(cphi, kFlat2, flat_target, {0.3, 0.1});
  for (double v : zero.tensor.a) CHECK(v == 0.0);

  std::vector<ScalarField> comps = {ScalarField::linear({1.0, 0.0}),
                                    ScalarField::constant(0.0, 2)};
  const MapField proj = MapField::componentwise(comps, 2);
  const Pullback pb = phi_pullback(proj, kFlat2, flat_target, {0.7, -0.2});
  CHECK(pb.tensor(0, 0) == doctest::Approx(1.0));
  CHECK(pb.tensor(1, 1) == doctest::Approx(0.0));
  CHECK(pb.trace == doctest::Approx(1.0));

  // radial map phi(r) = r evaluated at (0, 1): only the (2,2) entry survives
  const RadialProfile id_prof = RadialProfile::make([](double r) { return r; },
                                                    [](double) { return 1.0; },
                                                    [](double) { return 0.0; }, false);
  const MapField rad = MapField::radial(id_prof, {1.0}, 2);
  const TargetMetric t1 = TargetMetric::euclidean(1);
  const Pullback pr = phi_pullback(rad, kFlat2, t1, {0.0, 1.0});
  CHECK(pr.tensor(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(pr.tensor(0, 0)) < 1e-12);
}

TEST_CASE("contracted bianchi identity on the registry profiles") {
  CHECK(oracles::contracted_bianchi_residual(cigar2(), {0.7, 0.4}) < 1e-8);
  CHECK(oracles::contracted_bianchi_residual(round3(), {0.3, 0.2, 0.1}) < 1e-8);
}

TEST_CASE("radial profile origin handling removes 1/r singularities") {
  const RadialProfile F = make_profile("cigar");
  CHECK(F.d1_over_r(1e-12) == doctest::Approx(1.0).epsilon(1e-10));  // F'' (0) = 1
  const ScalarField f = ScalarField::radial(make_profile("cigar"));
  const Vec tiny = {1e-10, 0.0};
  const std::vector<double> h = f.hess(tiny);
  CHECK(std::isfinite(h[0]));
}

TEST_CASE("non-positive factor is rejected") {
  const RadialProfile bad = RadialProfile::make([](double r) { return 1.0 - r; },
                                                [](double) { return -1.0; },
                                                [](double) { return 0.0; });
  const AmbientMetric g{2, bad};
  CHECK_THROWS_AS(ricci(g, {2.0, 0.0}), std::domain_error);
}
