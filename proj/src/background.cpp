#include "geoflow/background.hpp"

#include <cmath>
#include <stdexcept>

namespace geoflow {

FDReport make_report(const std::string& name, double lhs, double rhs, double tol) {
  FDReport r;
  r.name = name;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-14});
  r.tol = tol;
  r.pass = r.rel_err < tol;
  return r;
}

SelfSimilarBackground::SelfSimilarBackground(AmbientMetric g, TargetMetric gamma,
                                             RadialProfile f_profile, MapField phi,
                                             SolitonParams params, double residual_tol)
    : kind_(Kind::radial), f_profile_(std::move(f_profile)), params_(params) {
  params_.validate();
  base_.g = std::move(g);
  base_.gamma = std::move(gamma);
  base_.f = ScalarField::radial(f_profile_);
  base_.phi = std::move(phi);
  base_.alpha = params.alpha;
  verify_base_residual(residual_tol);
}

SelfSimilarBackground::SelfSimilarBackground(AmbientMetric g, TargetMetric gamma, Vec f_gradient,
                                             double f_offset, MapField phi, SolitonParams params,
                                             double residual_tol)
    : kind_(Kind::translation), f_gradient_(std::move(f_gradient)), f_offset_(f_offset),
      params_(params) {
  params_.validate();
  if (!g.flat())
    throw std::invalid_argument("affine potentials are only supported on the flat metric");
  base_.g = std::move(g);
  base_.gamma = std::move(gamma);
  base_.f = ScalarField::linear(f_gradient_, f_offset_);
  base_.phi = std::move(phi);
  base_.alpha = params.alpha;
  verify_base_residual(residual_tol);
}

void SelfSimilarBackground::verify_base_residual(double tol) const {
  // Spot-check the gradient soliton system at a few sample points.
  const int m = dim();
  const Vec samples = {0.37, 0.9, 1.7};
  for (double r : samples) {
    Vec x(m, 0.0);
    x[0] = r * 0.8;
    if (m > 1) x[1] = r * 0.6;
    const CartesianResidual res =
        cartesian_residual(base_.g.factor, base_.gamma.factor, base_.f, base_.phi, params_, m, x);
    double worst = 0.0;
    for (double v : res.e1.a) worst = std::max(worst, std::abs(v));
    for (double v : res.e2) worst = std::max(worst, std::abs(v));
    if (worst > tol)
      throw std::invalid_argument("background base triple is not a gradient soliton (residual " +
                                  std::to_string(worst) + ")");
  }
}

double SelfSimilarBackground::identity_time() const {
  switch (params_.soliton_class) {
    case SolitonClass::steady: return 0.0;
    case SolitonClass::shrinking: return params_.T - 1.0;
    case SolitonClass::expanding: return params_.T + 1.0;
  }
  return 0.0;
}

double SelfSimilarBackground::sigma(double t) const {
  check_time(t);
  switch (params_.soliton_class) {
    case SolitonClass::steady: return 1.0;
    case SolitonClass::shrinking: return params_.T - t;
    case SolitonClass::expanding: return t - params_.T;
  }
  return 1.0;
}

double SelfSimilarBackground::flow_time(double t) const {
  check_time(t);
  switch (params_.soliton_class) {
    case SolitonClass::steady: return t;
    case SolitonClass::shrinking: return -std::log(params_.T - t);
    case SolitonClass::expanding: return std::log(t - params_.T);
  }
  return t;
}

void SelfSimilarBackground::check_time(double t) const {
  switch (params_.soliton_class) {
    case SolitonClass::steady: return;
    case SolitonClass::shrinking:
      if (!(t < params_.T)) throw std::domain_error("shrinking background requires t < T");
      return;
    case SolitonClass::expanding:
      if (!(t > params_.T)) throw std::domain_error("expanding background requires t > T");
      return;
  }
}

Vec SelfSimilarBackground::flow_point(const Vec& x0, double a) const {
  if (kind_ == Kind::translation) {
    Vec x = x0;
    for (size_t i = 0; i < x.size(); ++i) x[i] += a * f_gradient_[i];
    return x;
  }
  if (a == 0.0) return x0;
  const int m = dim();
  auto rhs = [this, m](double, const Vec& x, Vec& dx) {
    const double r = norm(x);
    const double F = base_.g.factor.value(r);
    const double w = F * F * f_profile_.d1_over_r(r);  // grad_g f = F^2 f' x/r
    dx.assign(m, 0.0);
    for (int i = 0; i < m; ++i) dx[i] = w * x[i];
  };
  const OdeResult res = ode45(rhs, 0.0, a, x0);
  if (!res.ok) throw std::runtime_error("diffeo flow: " + res.message);
  return res.y;
}

Vec SelfSimilarBackground::diffeo(const Vec& x0, double t) const {
  return flow_point(x0, flow_time(t));
}

Vec SelfSimilarBackground::diffeo_inverse(const Vec& x0, double t) const {
  return flow_point(x0, -flow_time(t));
}

SelfSimilarBackground::RadialTrace SelfSimilarBackground::trace_radial(double r, double t) const {
  if (kind_ != Kind::radial)
    throw std::logic_error("trace_radial requires a radial potential");
  const double a = flow_time(t);
  RadialTrace out{r, 1.0};
  if (a == 0.0) return out;
  auto rhs = [this](double, const Vec& y, Vec& dy) {
    const double r = y[0];
    const double F = base_.g.factor.value(r);
    const double Fp = base_.g.factor.d1(r);
    const double v = F * F * f_profile_.d1(r);
    // variational equation for J = dR/dr alongside the trace
    const double vp = 2.0 * F * Fp * f_profile_.d1(r) + F * F * f_profile_.d2(r);
    dy = {v, vp * y[1]};
  };
  const OdeResult res = ode45(rhs, 0.0, a, {r, 1.0});
  if (!res.ok) throw std::runtime_error("trace_radial: " + res.message);
  out.R = res.y[0];
  out.J = res.y[1];
  return out;
}

double SelfSimilarBackground::scale(double t) const {
  if (kind_ == Kind::translation) return 1.0;
  if (f_profile_.is_constant()) return 1.0;
  const RadialTrace tr = trace_radial(1.0, t);
  // Conformality certificate: a radial flow pulls the conformal class back to
  // itself exactly when dR/dr = R/r.
  if (std::abs(tr.J - tr.R) > 1e-7 * std::max(1.0, std::abs(tr.R)))
    throw std::runtime_error(
        "background flow is radial but not a pure scaling; conformal slice unavailable");
  return tr.R;
}

Ambient SelfSimilarBackground::slice(double t) const {
  check_time(t);
  Ambient amb;
  amb.gamma = base_.gamma;
  amb.alpha = params_.alpha;
  const double sg = sigma(t);
  const double rsg = std::sqrt(sg);
  if (kind_ == Kind::translation) {
    const Vec shift = flow_point(Vec(dim(), 0.0), flow_time(t));
    amb.g = base_.g;  // flat, sigma = 1 in the steady class
    amb.f = ScalarField::linear(f_gradient_, f_offset_ + dot(f_gradient_, shift));
    const MapField base_phi = base_.phi;
    MapField phibar;
    phibar.target_dim = base_phi.target_dim;
    auto shifted = [shift](const Vec& x) {
      Vec xs(x.size());
      for (size_t i = 0; i < x.size(); ++i) xs[i] = x[i] + shift[i];
      return xs;
    };
    phibar.value = [base_phi, shifted](const Vec& x) { return base_phi.value(shifted(x)); };
    phibar.jac = [base_phi, shifted](const Vec& x) { return base_phi.jac(shifted(x)); };
    phibar.hess = [base_phi, shifted](const Vec& x) { return base_phi.hess(shifted(x)); };
    amb.phi = phibar;
    return amb;
  }
  const double s = scale(t);
  const RadialProfile F = base_.g.factor;
  amb.g.dim = dim();
  amb.g.factor = RadialProfile::make(
      [F, s, rsg](double r) { return F.value(s * r) / (s * rsg); },
      [F, s, rsg](double r) { return F.d1(s * r) / rsg; },
      [F, s, rsg](double r) { return s * F.d2(s * r) / rsg; }, F.smooth_at_origin());
  const RadialProfile fp = f_profile_;
  amb.f = ScalarField::radial(RadialProfile::make(
      [fp, s](double r) { return fp.value(s * r); }, [fp, s](double r) { return s * fp.d1(s * r); },
      [fp, s](double r) { return s * s * fp.d2(s * r); }, fp.smooth_at_origin()));
  const MapField base_phi = base_.phi;
  MapField phibar;
  phibar.target_dim = base_phi.target_dim;
  auto scaled = [s](const Vec& x) {
    Vec xs(x.size());
    for (size_t i = 0; i < x.size(); ++i) xs[i] = s * x[i];
    return xs;
  };
  phibar.value = [base_phi, scaled](const Vec& x) { return base_phi.value(scaled(x)); };
  phibar.jac = [base_phi, scaled, s](const Vec& x) {
    std::vector<double> J = base_phi.jac(scaled(x));
    for (double& v : J) v *= s;
    return J;
  };
  phibar.hess = [base_phi, scaled, s](const Vec& x) {
    std::vector<double> H = base_phi.hess(scaled(x));
    for (double& v : H) v *= s * s;
    return H;
  };
  amb.phi = phibar;
  return amb;
}

double SelfSimilarBackground::fbar(const Vec& x, double t) const {
  return base_.f.value(diffeo(x, t));
}

double SelfSimilarBackground::grad_fbar_norm2(const Vec& x, double t) const {
  // |grad_gbar fbar|^2_gbar = |grad_g f|^2_g (psi_t(x)) / sigma(t)
  const Vec y = diffeo(x, t);
  const GradLap gl = grad_laplacian(base_.g, base_.f, y);
  return gl.grad_norm2 / sigma(t);
}

SelfSimilarBackground::EvalResult SelfSimilarBackground::eval(const Vec& x, double t) const {
  EvalResult out;
  const Ambient amb = slice(t);
  out.metric_factor = amb.g.factor.value(norm(x));
  out.phibar = amb.phi.value(x);
  out.fbar = amb.f.value(x);
  return out;
}

FDReport check_potential_evolution(const SelfSimilarBackground& bg, double t, const Vec& x,
                                   double dt, double tol) {
  const double lhs = (bg.fbar(x, t + dt) - bg.fbar(x, t - dt)) / (2.0 * dt);
  const double rhs = bg.grad_fbar_norm2(x, t);
  FDReport rep = make_report("potential_evolution", lhs, rhs, tol);
  rep.dt = dt;
  return rep;
}

}  // namespace geoflow
