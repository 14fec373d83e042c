#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "geoflow/numerics.hpp"

namespace geoflow {

// A radial function r -> value with two derivatives. Near the origin smooth
// profiles are evaluated through their even Taylor expansion c0 + c2 r^2 so
// that 1/r chain-rule factors stay finite.
class RadialProfile {
 public:
  RadialProfile() = default;

  static RadialProfile constant(double c);
  static RadialProfile make(std::function<double(double)> v, std::function<double(double)> d1,
                            std::function<double(double)> d2, bool smooth_at_origin = true);
  // Cubic-spline representation (not-a-knot) of samples on an increasing grid.
  static RadialProfile from_samples(std::vector<double> r, std::vector<double> values);

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;
  // f'(r)/r with the removable singularity at r = 0 filled in.
  double d1_over_r(double r) const;

  bool is_constant() const { return constant_; }
  bool smooth_at_origin() const { return smooth_origin_; }
  double rmin() const { return rmin_; }
  double rmax() const { return rmax_; }

 private:
  std::function<double(double)> v_, d1_, d2_;
  bool constant_ = false;
  bool smooth_origin_ = true;
  bool has_origin_data_ = false;
  double c0_ = 0.0, c2_ = 0.0;  // even Taylor data at r = 0
  double rmin_ = 0.0, rmax_ = 0.0;
  static constexpr double kOriginEps = 1e-8;
  void init_origin();
};

struct AmbientMetric {
  int dim = 0;
  RadialProfile factor;  // F in g_ij = F^-2 delta_ij

  static AmbientMetric euclidean(int m) { return {m, RadialProfile::constant(1.0)}; }
  bool flat() const { return factor.is_constant(); }
};

struct TargetMetric {
  int dim = 0;
  RadialProfile factor;  // G in gamma_ab = G^-2 delta_ab

  static TargetMetric euclidean(int n) { return {n, RadialProfile::constant(1.0)}; }
  // gamma_ab(y) as a flat array (n x n)
  std::vector<double> components(const Vec& y) const;
  double inner(const Vec& y, const Vec& u, const Vec& v) const;
  // Christoffel symbols of the target metric at y: Gamma^c_ab
  double christoffel(const Vec& y, int c, int a, int b) const;
};

struct ScalarField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> grad;                  // euclidean partials
  std::function<std::vector<double>(const Vec&)> hess;  // euclidean second partials, m x m

  static ScalarField constant(double c, int m);
  static ScalarField radial(const RadialProfile& p);
  static ScalarField linear(const Vec& coeffs, double offset = 0.0);
};

struct MapField {
  int target_dim = 0;
  std::function<Vec(const Vec&)> value;
  std::function<std::vector<double>(const Vec&)> jac;   // n x m, [a*m + i]
  std::function<std::vector<double>(const Vec&)> hess;  // n x m x m, [(a*m + i)*m + j]

  static MapField constant(Vec y0, int m);
  // phi(x) = p(|x|) * dir, dir a fixed unit vector in the target.
  static MapField radial(const RadialProfile& p, Vec dir, int m);
  static MapField componentwise(std::vector<ScalarField> comps, int m);
};

struct SymTensor {
  int dim = 0;
  std::string tag;
  std::vector<double> a;  // dim x dim, row-major

  SymTensor() = default;
  SymTensor(int m, std::string t) : dim(m), tag(std::move(t)), a(m * m, 0.0) {}
  double operator()(int i, int j) const { return a[i * dim + j]; }
  double& at(int i, int j) { return a[i * dim + j]; }
  double max_asymmetry() const;
};

struct Rank3 {
  int dim = 0;
  std::vector<double> a;  // dim^3, [k, i, j]
  double operator()(int k, int i, int j) const { return a[(k * dim + i) * dim + j]; }
  double& at(int k, int i, int j) { return a[(k * dim + i) * dim + j]; }
};

// --- pointwise tensor calculus for g = F^-2 delta ---

Rank3 christoffel(const AmbientMetric& g, const Vec& x);
SymTensor ricci(const AmbientMetric& g, const Vec& x);
double scalar_curvature(const AmbientMetric& g, const Vec& x);
double gauss_curvature_2d(const AmbientMetric& g, const Vec& x);
SymTensor hessian(const AmbientMetric& g, const ScalarField& h, const Vec& x);

struct GradLap {
  Vec grad;          // contravariant components F^2 dh
  double lap = 0.0;  // Laplace-Beltrami
  double grad_norm2 = 0.0;
};
GradLap grad_laplacian(const AmbientMetric& g, const ScalarField& h, const Vec& x);

Vec tension_field(const MapField& phi, const AmbientMetric& g, const TargetMetric& gamma,
                  const Vec& x);

struct Pullback {
  SymTensor tensor;
  double trace = 0.0;  // |grad phi|^2 = g^{ij} (phi* gamma)_{ij}
};
Pullback phi_pullback(const MapField& phi, const AmbientMetric& g, const TargetMetric& gamma,
                      const Vec& x);

// Squared g-norm of a covariant symmetric 2-tensor: g^{ik} g^{jl} S_ij S_kl.
double tensor_norm2(const AmbientMetric& g, const SymTensor& s, const Vec& x);

// Inner products with the metric raising both indices of h.
double tensor_inner(const AmbientMetric& g, const SymTensor& h, const SymTensor& s, const Vec& x);

// Weighted scalar curvature R + 2 lap f - |grad f|^2.
double weighted_scalar_curvature(const AmbientMetric& g, const ScalarField& f, const Vec& x);

// Ricci evaluated on a g-orthonormal frame direction pair. u_dir/v_dir are
// euclidean unit vectors; the corresponding g-unit vectors are F*u_dir.
double ricci_frame(const AmbientMetric& g, const Vec& x, const Vec& u_dir, const Vec& v_dir);

}  // namespace geoflow
