#pragma once

#include <functional>
#include <vector>

#include "geoflow/conformal.hpp"

namespace geoflow {

// Radial solver for the conjugate heat equation
//   -du/dt - lap_g u + (R_g - alpha |grad phi|^2) u = 0
// on a moving disk/annulus [a(t), b(t)], solved backwards in time from
// terminal data at t_end. The moving domain is mapped to the fixed reference
// interval [0, 1]; Crank-Nicolson in the backward time s = t_end - t with
// Robin rows e0 u = H u discretized through second-order ghost points.

enum class HeatBC { robin_mcf, dirichlet_zero, neumann_zero, origin };

struct ConjugateHeatProblem {
  int m = 2;
  AmbientMetric g;
  std::function<double(double)> potential;  // c(r) = R_g - alpha |grad phi|^2 at radius r
  std::function<double(double)> inner_radius;  // a(t) >= 0
  std::function<double(double)> outer_radius;  // b(t) > a(t)
  std::function<double(double)> outer_H;       // inward mean curvature of the outer boundary
  std::function<double(double)> inner_H;       // inward (into the annulus) mean curvature
  HeatBC inner_bc = HeatBC::origin;
  HeatBC outer_bc = HeatBC::dirichlet_zero;
  double t_begin = 0.0, t_end = 1.0;
  std::function<double(double)> terminal;  // u(r) at t_end
};

struct ConjugateHeatState {
  double t = 0.0;
  std::vector<double> r;  // physical radii
  std::vector<double> u;
};

struct ConjugateHeatOptions {
  int n_nodes = 257;
  double ds = 1e-3;
  int store_stride = 1;  // keep every k-th step (terminal and first always kept)
};

struct ConjugateHeatResult {
  std::vector<ConjugateHeatState> states;  // ascending in t
  bool positive = true;
  int positivity_loss_step = -1;
};

ConjugateHeatResult conjugate_heat_solve_radial(const ConjugateHeatProblem& prob,
                                                const ConjugateHeatOptions& opts = {});

// Quadrature of u against the Riemannian volume of the slice (mass monitor).
double heat_mass(const ConjugateHeatState& st, const AmbientMetric& g);

// Linear interpolation of a stored trajectory at time t (states must bracket t).
ConjugateHeatState interpolate_state(const ConjugateHeatResult& res, double t);

}  // namespace geoflow
