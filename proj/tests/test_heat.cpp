#include <cmath>

#include "doctest.h"
#include "geoflow/conjugate_heat.hpp"

using namespace geoflow;

namespace {

ConjugateHeatProblem static_flat_problem(int m) {
  ConjugateHeatProblem prob;
  prob.m = m;
  prob.g = AmbientMetric::euclidean(m);
  prob.potential = [](double) { return 0.0; };
  prob.inner_radius = [](double) { return 0.0; };
  prob.outer_radius = [](double) { return 8.0; };
  prob.outer_H = [](double) { return 0.0; };
  prob.inner_H = [](double) { return 0.0; };
  prob.inner_bc = HeatBC::origin;
  prob.outer_bc = HeatBC::dirichlet_zero;
  return prob;
}

double kernel3(double r, double tau) {
  return std::pow(4.0 * M_PI * tau, -1.5) * std::exp(-r * r / (4.0 * tau));
}

}  // namespace

TEST_CASE("backward heat kernel is reproduced in flat 3-space") {
  ConjugateHeatProblem prob = static_flat_problem(3);
  prob.t_begin = 0.0;
  prob.t_end = 0.9;  // tau = T - t from 0.1 back to 1 with T = 1
  prob.terminal = [](double r) { return kernel3(r, 0.1); };
  ConjugateHeatOptions opts;
  opts.n_nodes = 513;
  opts.ds = 2.5e-4;
  opts.store_stride = 600;
  const ConjugateHeatResult res = conjugate_heat_solve_radial(prob, opts);
  REQUIRE(res.positive);
  double linf = 0.0;
  for (const auto& st : res.states) {
    const double tau = 1.0 - st.t;
    for (size_t i = 0; i < st.r.size(); ++i)
      linf = std::max(linf, std::abs(st.u[i] - kernel3(st.r[i], tau)));
  }
  CHECK(linf < 1e-4);
}

TEST_CASE("constant-potential reduction matches the exponential") {
  ConjugateHeatProblem prob = static_flat_problem(2);
  prob.potential = [](double) { return 1.0; };
  prob.outer_bc = HeatBC::neumann_zero;
  prob.t_begin = 0.0;
  prob.t_end = 0.5;
  prob.terminal = [](double) { return 2.0; };
  ConjugateHeatOptions opts;
  opts.n_nodes = 9;
  opts.ds = 1e-5;
  opts.store_stride = 10000;
  const ConjugateHeatResult res = conjugate_heat_solve_radial(prob, opts);
  for (const auto& st : res.states) {
    const double expect = 2.0 * std::exp(-(0.5 - st.t));
    for (double v : st.u) CHECK(std::abs(v - expect) < 2e-10);
  }
}

TEST_CASE("zero terminal data stays zero") {
  ConjugateHeatProblem prob = static_flat_problem(2);
  prob.t_begin = 0.0;
  prob.t_end = 0.3;
  prob.terminal = [](double) { return 0.0; };
  ConjugateHeatOptions opts;
  opts.n_nodes = 33;
  opts.ds = 1e-3;
  const ConjugateHeatResult res = conjugate_heat_solve_radial(prob, opts);
  for (const auto& st : res.states)
    for (double v : st.u) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("mass is conserved for the decaying whole-space solution") {
  ConjugateHeatProblem prob = static_flat_problem(3);
  prob.t_begin = 0.0;
  prob.t_end = 0.7;
  prob.terminal = [](double r) { return kernel3(r, 0.3); };
  ConjugateHeatOptions opts;
  opts.n_nodes = 257;
  opts.ds = 5e-4;
  opts.store_stride = 350;
  const ConjugateHeatResult res = conjugate_heat_solve_radial(prob, opts);
  const double m0 = heat_mass(res.states.back(), prob.g);
  for (const auto& st : res.states)
    CHECK(heat_mass(st, prob.g) == doctest::Approx(m0).epsilon(1e-4));
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("moving-domain robin solve keeps positivity and satisfies the boundary law") {
  const double R0 = 2.0;
  auto radius = [R0](double t) { return std::sqrt(R0 * R0 - 2.0 * t); };
  ConjugateHeatProblem prob;
  prob.m = 2;
  prob.g = AmbientMetric::euclidean(2);
  prob.potential = [](double) { return 0.0; };
  prob.inner_radius = [](double) { return 0.0; };
  prob.outer_radius = radius;
  prob.outer_H = [radius](double t) { return 1.0 / radius(t); };
  prob.inner_H = [](double) { return 0.0; };
  prob.inner_bc = HeatBC::origin;
  prob.outer_bc = HeatBC::robin_mcf;
  prob.t_begin = 0.0;
  prob.t_end = 1.5;
  prob.terminal = [](double r) { return std::exp(-0.25 * r * r); };
  ConjugateHeatOptions opts;
  opts.n_nodes = 257;
  opts.ds = 5e-4;
  opts.store_stride = 500;
  const ConjugateHeatResult res = conjugate_heat_solve_radial(prob, opts);
  REQUIRE(res.positive);
  // check e0 u = H u at the boundary via one-sided differences
  const ConjugateHeatState st = interpolate_state(res, 0.75);
  const size_t nn = st.r.size();
  const double h = st.r[1] - st.r[0];
  const double ur = (3.0 * st.u[nn - 1] - 4.0 * st.u[nn - 2] + st.u[nn - 3]) / (2.0 * h);
  const double H = 1.0 / radius(0.75);
  CHECK(-ur == doctest::Approx(H * st.u[nn - 1]).epsilon(5e-3));
}

TEST_CASE("degenerate time interval is rejected") {
  ConjugateHeatProblem prob = static_flat_problem(2);
  prob.t_begin = 1.0;
  prob.t_end = 0.5;
  prob.terminal = [](double) { return 1.0; };
  CHECK_THROWS_AS(conjugate_heat_solve_radial(prob), std::invalid_argument);
}
