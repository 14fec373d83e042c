#pragma once

#include <cmath>
#include <vector>

#include "geoflow/background.hpp"
#include "geoflow/conformal.hpp"

namespace geoflow {

// Scalar samples on the periodic grid [0, 2pi)^2, row-major u[iy * n + ix].
struct TorusField {
  int n = 0;
  std::vector<double> a;
  TorusField() = default;
  explicit TorusField(int n_, double fill = 0.0) : n(n_), a(n_ * n_, fill) {}
  double& at(int ix, int iy) { return a[iy * n + ix]; }
  double operator()(int ix, int iy) const { return a[iy * n + ix]; }
};

// Spectral differentiation on the uniform periodic grid.
class TorusGrid {
 public:
  explicit TorusGrid(int n);
  int n() const { return n_; }
  double node(int i) const { return 2.0 * M_PI * i / n_; }
  double cell_area() const { return (2.0 * M_PI / n_) * (2.0 * M_PI / n_); }
  TorusField dx(const TorusField& u) const;
  TorusField dy(const TorusField& u) const;
  double integral(const TorusField& u) const;  // trapezoid = spectral on the torus

 private:
  int n_;
  std::vector<double> d1_;  // dense periodic differentiation matrix
};

// Full 2d metric, map and weight on the torus. The metric starts conformal,
// g = e^{2w} delta, but the modified flow takes it outside the conformal
// class, so all three components are carried.
struct TorusState {
  int n = 0;
  TorusField g11, g12, g22;
  std::vector<TorusField> phi;  // target components
  TorusField f;

  static TorusState conformal(const TorusGrid& grid, const TorusField& w,
                              const std::vector<TorusField>& phi, const TorusField& f);
};

// Pointwise geometric quantities of the state, spectral in space.
struct TorusGeometry {
  TorusField R;                         // scalar curvature
  TorusField hess_f_11, hess_f_12, hess_f_22;
  TorusField lap_f;                     // tr_g hess f (identical floats by construction)
  TorusField grad_f_sq;
  std::vector<TorusField> tension;      // tau_{g,gamma} phi components
  std::vector<TorusField> advect;       // <grad phi, grad f> components
  TorusField pullback_11, pullback_12, pullback_22;  // gamma_ab d_i phi^a d_j phi^b
  TorusField grad_phi_sq;               // tr_g pullback
  TorusField sqrt_det;
};

TorusGeometry torus_geometry(const TorusGrid& grid, const TorusState& s, const TargetMetric& gamma);

// F^alpha_infty on the closed torus (no boundary term).
struct FunctionalBreakdown {
  std::vector<double> bulk_samples;
  std::vector<double> boundary_samples;
  double bulk = 0.0;
  double boundary = 0.0;
  double total = 0.0;
};

FunctionalBreakdown f_alpha_torus(const TorusGrid& grid, const TorusState& s,
                                  const TargetMetric& gamma, double alpha);

// One explicit step of the modified coupled flow. Throws on CFL violation
// (dt > cfl * h^2 * min eigenvalue of g) or non-finite state.
struct ModifiedFlowOptions {
  double cfl = 0.25;
};

TorusState modified_flow_step(const TorusGrid& grid, const TorusState& s,
                              const TargetMetric& gamma, double alpha, double dt,
                              const ModifiedFlowOptions& opts = {});

// Time derivatives of the state (used by step and by the measure identity test).
struct ModifiedFlowRates {
  TorusField dg11, dg12, dg22;
  std::vector<TorusField> dphi;
  TorusField df;
  TorusField tr_h_half_minus_ell;  // pointwise tr_g h / 2 - ell
};

ModifiedFlowRates modified_flow_rates(const TorusGrid& grid, const TorusState& s,
                                      const TargetMetric& gamma, double alpha);

double weighted_volume(const TorusGrid& grid, const TorusState& s);

// Measure-preserving variation test for the variation formula: lhs is the
// central difference of F^alpha under (g + eps h, f + eps tr h / 2, phi + eps v),
// rhs the first-variation integral.
FDReport variation_delta_f_torus(const TorusGrid& grid, const TorusState& base,
                                 const TargetMetric& gamma, double alpha,
                                 const TorusField& h11, const TorusField& h12,
                                 const TorusField& h22, const std::vector<TorusField>& vtheta,
                                 double eps, double tol = 1e-4);

}  // namespace geoflow
