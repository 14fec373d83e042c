#pragma once

#include <functional>
#include <string>
#include <vector>

#include "geoflow/surfaces.hpp"
#include "geoflow/torus.hpp"

namespace geoflow {

// Weighted area int e^{-f} dA of hypersurfaces. Curve quadrature uses spectral
// tangents, so periodic trapezoid keeps spectral accuracy on analytic curves.
double weighted_area(const PlaneCurve& c, const Ambient& amb);
double weighted_area_sphere(const Ambient& amb, int m, double R);

struct WeightedAreaSeries {
  std::vector<double> times;
  std::vector<double> area_f;
  std::vector<double> phi;
  std::vector<double> residual_l2;  // int (H + e f)^2 e^{-f} dA per time
};

double huisken_prefactor(SolitonClass cls, int m, double T, double t);
std::vector<double> huisken_phi(const std::vector<double>& times,
                                const std::vector<double>& area_f, SolitonClass cls, int m,
                                double T);

// F^alpha_infty on a radial disk/annulus [a, b] (a = 0 means disk).
FunctionalBreakdown f_alpha_radial(const Ambient& amb, int m, double a, double b, int nquad = 2048);

// Measure-preserving variation on the disk for conformal perturbations
// h = eta * g together with a radial map perturbation.
FDReport variation_delta_f_disk(const Ambient& amb, int m, double a, double b,
                                const RadialProfile& eta, const RadialProfile& vtheta_profile,
                                const Vec& vtheta_dir, double eps, double tol = 1e-4,
                                int nquad = 2048);

struct HarnackReport {
  std::vector<int> indices;  // vertex indices the norms run over
  std::vector<double> dH_dt;
  std::vector<double> term_VgradH;  // 2 <V, grad H>
  std::vector<double> term_AVV;     // A(V, V)
  std::vector<double> term_R0i;     // 2 R^{0i} grad_i f
  std::vector<double> term_gradR;   // -1/2 nabla_0 R
  std::vector<double> term_HR00;    // -H R_00
  std::vector<double> term_alphaA;  // alpha A(grad phi, grad phi)
  std::vector<double> total;
  double sup = 0.0, l2 = 0.0;
};

enum class HarnackVector { zero, minus_grad_f };

// Hamilton expression Z(V) = dH/dt + 2<V, grad H> + A(V,V) on the middle
// snapshot of a (reparametrized) family; ambient provided per time.
HarnackReport harnack_Z(const CurveFamily& family, const std::function<Ambient(double)>& ambient,
                        size_t k, HarnackVector vmode, double interior_fraction = 1.0);

// Full extended expression with ambient curvature corrections; requires a
// steady background and a mean curvature soliton family (checked on the first
// snapshot within hypothesis_tol).
HarnackReport extended_harnack(const CurveFamily& family, const SelfSimilarBackground& bg,
                               size_t k, double interior_fraction = 1.0,
                               double hypothesis_tol = 1e-4);

struct DerivativeIdentityRhs {
  double bulk = 0.0;
  double boundary = 0.0;
};

// Right side of the functional time-derivative identity for radial data on a
// disk/annulus; dH_dt_outer is the mean-curvature time derivative of the
// moving outer boundary under its MCF parametrization.
DerivativeIdentityRhs derivative_identity_rhs_radial(const Ambient& amb, int m, double a, double b, double dH_dt_outer,
                        int nquad = 2048);

// Same right side with the boundary given as a curve family in a steady
// background (bulk integrand sampled over a bounding box of the curve).
DerivativeIdentityRhs derivative_identity_rhs_curve(const CurveFamily& family, const SelfSimilarBackground& bg, size_t k,
                       double interior_fraction = 0.8);

}  // namespace geoflow
