#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geoflow/background.hpp"

namespace geoflow {

// Coordinate sphere |x| = R in a radial conformal ambient.
struct SphereSurface {
  double radius = 0.0;
};

struct SphereGeometry {
  double H = 0.0;              // mean curvature w.r.t. the inward normal
  double principal = 0.0;      // all principal curvatures coincide
  double area = 0.0;           // induced Riemannian area
  double e0f = 0.0;            // derivative of the weight along the inward normal
  double weighted_area = 0.0;  // int e^{-f} dA
};

double sphere_mean_curvature(const AmbientMetric& g, double R);
SphereGeometry sphere_geometry(const Ambient& amb, const SphereSurface& s);

// Closed (or truncated open) polygonal curve in a 2d conformal ambient.
// Closed curves are oriented counterclockwise; the cached normal is the
// inward one (left of the tangent).
class PlaneCurve {
 public:
  PlaneCurve() = default;
  PlaneCurve(std::vector<double> xs, std::vector<double> ys, bool closed = true);

  static PlaneCurve circle(double R, int n, double cx = 0.0, double cy = 0.0);
  static PlaneCurve ellipse(double a, double b, int n);
  // y = -log cos x on [-half_width, half_width], left to right
  static PlaneCurve grim_reaper(double half_width, int n, double y_shift = 0.0);

  int size() const { return static_cast<int>(x_.size()); }
  bool closed() const { return closed_; }
  double x(int j) const { return x_[j]; }
  double y(int j) const { return y_[j]; }
  std::vector<double>& xs() { return x_; }
  std::vector<double>& ys() { return y_; }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& ys() const { return y_; }

  bool is_simple() const;               // segment sweep self-intersection test
  double mean_spacing() const;          // euclidean
  bool spacing_within(double lo_factor, double hi_factor) const;
  double signed_area() const;

  // Interpolates the curve at fractional label u (periodic for closed curves).
  void eval(double u, double* px, double* py) const;

 private:
  std::vector<double> x_, y_;
  bool closed_ = true;
};

// Per-vertex extrinsic data of a curve in the ambient slice.
struct CurveGeometry {
  std::vector<double> k_euc;    // euclidean curvature w.r.t. the inward normal
  std::vector<double> H;        // ambient geodesic curvature (= A for curves)
  std::vector<double> nx, ny;   // euclidean unit inward normal
  std::vector<double> tx, ty;   // euclidean unit tangent
  std::vector<double> ds_du;    // ambient arclength density per unit label
  std::vector<double> fbar;     // weight on the curve
  std::vector<double> e0f;      // normal derivative of the weight (g-unit normal)
  std::vector<double> fs;       // tangential derivative df/ds (g-arclength)
  double length = 0.0;          // ambient length (closed curves)
};

CurveGeometry curve_geometry(const PlaneCurve& c, const Ambient& amb);

// Arclength re-equidistribution through periodic cubic interpolation; purely
// tangential, open curves keep their endpoints.
PlaneCurve redistribute_arclength(const PlaneCurve& c);

// Explicit MCF step x <- x + dt H e plus tangential redistribution.
struct McfOptions {
  double cfl = 0.4;
  bool redistribute = true;
  double blowup_threshold = 0.1;  // |H| dt above this rejects the step
};

PlaneCurve mcf_step(const PlaneCurve& c, const Ambient& amb, double dt,
                    const McfOptions& opts = {});
double mcf_step_sphere(double R, const Ambient& amb, int m, double dt);

// H + e fbar per vertex plus norms.
struct SolitonResidual {
  std::vector<double> values;
  double sup = 0.0;
  double l2 = 0.0;  // weighted L2 integral sqrt( int (H+ef)^2 e^{-f} dA )
};

SolitonResidual soliton_residual(const PlaneCurve& c, const Ambient& amb);
double soliton_residual_sphere(const Ambient& amb, int m, double R);

// Brent search for an f-minimal coordinate sphere.
double find_f_minimal_sphere(const Ambient& amb, int m, double r_lo, double r_hi,
                             double tol = 1e-12);
// Relaxation flow for curves: move by -(H + e f) e until the sup residual drops
// below tol.
PlaneCurve find_f_minimal_curve(PlaneCurve c, const Ambient& amb, double tol, int max_steps,
                                const McfOptions& opts = {});

struct CurveFamily {
  std::vector<double> times;
  std::vector<PlaneCurve> curves;
  std::string construction;  // "pushforward" or "reparametrized" or "mcf"
};

struct SphereFamily {
  std::vector<double> times;
  std::vector<double> radii;
  std::string construction;
};

// Soliton families x_t = psi_t^{-1} seeded by an f-minimal surface at the
// identity time.
SphereFamily construct_soliton_family(const SelfSimilarBackground& bg, double R0,
                                      const std::vector<double>& times);
CurveFamily construct_soliton_family(const SelfSimilarBackground& bg, const PlaneCurve& seed,
                                     const std::vector<double>& times);

// Removes tangential velocity by relabelling vertices; curve images are kept.
CurveFamily reparametrize_to_mcf(const CurveFamily& family);

// MCF evolution of a curve through an evolving background, with snapshots.
CurveFamily evolve_curve_mcf(const SelfSimilarBackground& bg, PlaneCurve c, double t0, double t1,
                             double dt, int snapshot_stride, const McfOptions& opts = {});
SphereFamily evolve_sphere_mcf(const SelfSimilarBackground& bg, double R0, double t0, double t1,
                               double dt, int snapshot_stride);

double hausdorff_distance(const PlaneCurve& a, const PlaneCurve& b);

}  // namespace geoflow
