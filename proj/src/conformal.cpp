#include "geoflow/conformal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace geoflow {

namespace {
double radius(const Vec& x) { return norm(x); }
}  // namespace

void RadialProfile::init_origin() {
  rmin_ = 0.0;
  rmax_ = std::numeric_limits<double>::infinity();
  if (smooth_origin_) {
    c0_ = v_(0.0);
    c2_ = 0.5 * d2_(0.0);
    has_origin_data_ = true;
  }
}

RadialProfile RadialProfile::constant(double c) {
  RadialProfile p;
  p.v_ = [c](double) { return c; };
  p.d1_ = [](double) { return 0.0; };
  p.d2_ = [](double) { return 0.0; };
  p.constant_ = true;
  p.smooth_origin_ = true;
  p.init_origin();
  return p;
}

RadialProfile RadialProfile::make(std::function<double(double)> v, std::function<double(double)> d1,
                                  std::function<double(double)> d2, bool smooth_at_origin) {
  RadialProfile p;
  p.v_ = std::move(v);
  p.d1_ = std::move(d1);
  p.d2_ = std::move(d2);
  p.smooth_origin_ = smooth_at_origin;
  p.init_origin();
  return p;
}

RadialProfile RadialProfile::from_samples(std::vector<double> r, std::vector<double> values) {
  auto sp = std::make_shared<CubicSpline>();
  sp->build(std::move(r), std::move(values));
  RadialProfile p;
  p.v_ = [sp](double t) { return sp->eval(t); };
  p.d1_ = [sp](double t) { return sp->deriv(t); };
  p.d2_ = [sp](double t) { return sp->deriv2(t); };
  p.rmin_ = sp->xmin();
  p.rmax_ = sp->xmax();
  p.smooth_origin_ = false;
  if (p.rmin_ <= 1e-12) {
    p.smooth_origin_ = true;
    p.c0_ = sp->eval(p.rmin_);
    p.c2_ = 0.5 * sp->deriv2(p.rmin_);
    p.has_origin_data_ = true;
  }
  return p;
}

double RadialProfile::value(double r) const {
  if (r < kOriginEps && has_origin_data_) return c0_ + c2_ * r * r;
  return v_(r);
}

double RadialProfile::d1(double r) const {
  if (r < kOriginEps && has_origin_data_) return 2.0 * c2_ * r;
  return d1_(r);
}

double RadialProfile::d2(double r) const {
  if (r < kOriginEps && has_origin_data_) return 2.0 * c2_;
  return d2_(r);
}

double RadialProfile::d1_over_r(double r) const {
  if (r < kOriginEps) {
    if (has_origin_data_) return 2.0 * c2_;
    throw std::domain_error("RadialProfile: derivative/r requested at origin of a profile "
                            "without origin data");
  }
  return d1_(r) / r;
}

std::vector<double> TargetMetric::components(const Vec& y) const {
  const double G = factor.value(radius(y));
  std::vector<double> g(dim * dim, 0.0);
  for (int a = 0; a < dim; ++a) g[a * dim + a] = 1.0 / (G * G);
  return g;
}

double TargetMetric::inner(const Vec& y, const Vec& u, const Vec& v) const {
  const double G = factor.value(radius(y));
  return dot(u, v) / (G * G);
}

double TargetMetric::christoffel(const Vec& y, int c, int a, int b) const {
  // Gamma^c_ab = -d_bc G_a/G - d_ca G_b/G + d_ab G_c/G, G_a = G'(rho) y_a / rho
  const double rho = radius(y);
  const double G = factor.value(rho);
  const double w = factor.d1_over_r(rho) / G;  // G'(rho)/(G rho)
  double out = 0.0;
  if (b == c) out -= w * y[a];
  if (c == a) out -= w * y[b];
  if (a == b) out += w * y[c];
  return out;
}

ScalarField ScalarField::constant(double c, int m) {
  ScalarField f;
  f.value = [c](const Vec&) { return c; };
  f.grad = [m](const Vec&) { return Vec(m, 0.0); };
  f.hess = [m](const Vec&) { return std::vector<double>(m * m, 0.0); };
  return f;
}

ScalarField ScalarField::radial(const RadialProfile& p) {
  ScalarField f;
  f.value = [p](const Vec& x) { return p.value(radius(x)); };
  f.grad = [p](const Vec& x) {
    const double r = radius(x);
    const double w = p.d1_over_r(r);
    Vec g(x.size());
    for (size_t i = 0; i < x.size(); ++i) g[i] = w * x[i];
    return g;
  };
  f.hess = [p](const Vec& x) {
    const int m = static_cast<int>(x.size());
    const double r = radius(x);
    const double w1 = p.d1_over_r(r);
    std::vector<double> h(m * m, 0.0);
    double w2 = 0.0;  // (f'' - f'/r), multiplied below by x_i x_j / r^2
    if (r >= 1e-8) w2 = p.d2(r) - w1;
    const double r2 = std::max(r * r, 1e-300);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        h[i * m + j] = (r >= 1e-8 ? w2 * x[i] * x[j] / r2 : 0.0) + (i == j ? w1 : 0.0);
      }
    return h;
  };
  return f;
}

ScalarField ScalarField::linear(const Vec& coeffs, double offset) {
  const int m = static_cast<int>(coeffs.size());
  ScalarField f;
  f.value = [coeffs, offset](const Vec& x) { return offset + dot(coeffs, x); };
  f.grad = [coeffs](const Vec&) { return coeffs; };
  f.hess = [m](const Vec&) { return std::vector<double>(m * m, 0.0); };
  return f;
}

MapField MapField::constant(Vec y0, int m) {
  MapField phi;
  const int n = static_cast<int>(y0.size());
  phi.target_dim = n;
  phi.value = [y0](const Vec&) { return y0; };
  phi.jac = [n, m](const Vec&) { return std::vector<double>(n * m, 0.0); };
  phi.hess = [n, m](const Vec&) { return std::vector<double>(n * m * m, 0.0); };
  return phi;
}

MapField MapField::radial(const RadialProfile& p, Vec dir, int m) {
  const int n = static_cast<int>(dir.size());
  ScalarField s = ScalarField::radial(p);
  MapField phi;
  phi.target_dim = n;
  phi.value = [p, dir](const Vec& x) {
    const double v = p.value(radius(x));
    Vec y(dir.size());
    for (size_t a = 0; a < dir.size(); ++a) y[a] = v * dir[a];
    return y;
  };
  phi.jac = [s, dir, n, m](const Vec& x) {
    const Vec g = s.grad(x);
    std::vector<double> J(n * m, 0.0);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < m; ++i) J[a * m + i] = dir[a] * g[i];
    return J;
  };
  phi.hess = [s, dir, n, m](const Vec& x) {
    const std::vector<double> h = s.hess(x);
    std::vector<double> H(n * m * m, 0.0);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) H[(a * m + i) * m + j] = dir[a] * h[i * m + j];
    return H;
  };
  return phi;
}

MapField MapField::componentwise(std::vector<ScalarField> comps, int m) {
  const int n = static_cast<int>(comps.size());
  MapField phi;
  phi.target_dim = n;
  phi.value = [comps, n](const Vec& x) {
    Vec y(n);
    for (int a = 0; a < n; ++a) y[a] = comps[a].value(x);
    return y;
  };
  phi.jac = [comps, n, m](const Vec& x) {
    std::vector<double> J(n * m);
    for (int a = 0; a < n; ++a) {
      const Vec g = comps[a].grad(x);
      for (int i = 0; i < m; ++i) J[a * m + i] = g[i];
    }
    return J;
  };
  phi.hess = [comps, n, m](const Vec& x) {
    std::vector<double> H(n * m * m);
    for (int a = 0; a < n; ++a) {
      const std::vector<double> h = comps[a].hess(x);
      for (int i = 0; i < m * m; ++i) H[a * m * m + i] = h[i];
    }
    return H;
  };
  return phi;
}

double SymTensor::max_asymmetry() const {
  double w = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < i; ++j) w = std::max(w, std::abs((*this)(i, j) - (*this)(j, i)));
  return w;
}

namespace {

void check_metric(const AmbientMetric& g, const Vec& x, double F) {
  if (static_cast<int>(x.size()) != g.dim)
    throw std::invalid_argument("point dimension does not match metric dimension");
  if (!(F > 0.0)) throw std::domain_error("conformal factor is not positive at the point");
}

}  // namespace

Rank3 christoffel(const AmbientMetric& g, const Vec& x) {
  const int m = g.dim;
  const double r = radius(x);
  const double F = g.factor.value(r);
  check_metric(g, x, F);
  const double w = g.factor.d1_over_r(r) / F;  // F'/(F r)
  // g = e^{2u} delta with u = -log F:  Gamma^k_ij = d_ik u_j + d_jk u_i - d_ij u_k
  Rank3 G;
  G.dim = m;
  G.a.assign(m * m * m, 0.0);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        if (i == k) v -= w * x[j];
        if (j == k) v -= w * x[i];
        if (i == j) v += w * x[k];
        G.at(k, i, j) = v;
      }
  return G;
}

SymTensor ricci(const AmbientMetric& g, const Vec& x) {
  const int m = g.dim;
  const double r = radius(x);
  const double F = g.factor.value(r);
  check_metric(g, x, F);
  const double w1 = g.factor.d1_over_r(r);  // F'/r
  const double d2 = g.factor.d2(r);
  // Cartesian second partials of F for a radial profile.
  const double r2 = std::max(r * r, 1e-300);
  double lapF = 0.0, grad2 = 0.0;
  SymTensor out(m, "Ric");
  std::vector<double> Fij(m * m, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double v = (i == j) ? w1 : 0.0;
      if (r >= 1e-8) v += (d2 - w1) * x[i] * x[j] / r2;
      Fij[i * m + j] = v;
    }
    lapF += Fij[i * m + i];
    grad2 += (w1 * x[i]) * (w1 * x[i]);
  }
  const double iso = F * lapF - (m - 1) * grad2;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.at(i, j) = ((m - 2) * F * Fij[i * m + j] + (i == j ? iso : 0.0)) / (F * F);
  return out;
}

double scalar_curvature(const AmbientMetric& g, const Vec& x) {
  const SymTensor ric = ricci(g, x);
  const double F = g.factor.value(radius(x));
  double tr = 0.0;
  for (int i = 0; i < g.dim; ++i) tr += ric(i, i);
  return F * F * tr;
}

double gauss_curvature_2d(const AmbientMetric& g, const Vec& x) {
  if (g.dim != 2) throw std::invalid_argument("gauss_curvature_2d: metric dimension must be 2");
  const double r = radius(x);
  const double F = g.factor.value(r);
  check_metric(g, x, F);
  // K = F * lap_euc F - |grad_euc F|^2 for g = F^-2 delta in 2d
  const double lapF = g.factor.d2(r) + g.factor.d1_over_r(r);
  const double d1 = g.factor.d1(r);
  return F * lapF - d1 * d1;
}

SymTensor hessian(const AmbientMetric& g, const ScalarField& h, const Vec& x) {
  const int m = g.dim;
  const double r = radius(x);
  const double F = g.factor.value(r);
  check_metric(g, x, F);
  const double wF = g.factor.d1_over_r(r) / F;  // F'/(F r): F_i/F = wF * x_i
  const Vec dh = h.grad(x);
  const std::vector<double> d2h = h.hess(x);
  double sum_wh = 0.0;
  for (int k = 0; k < m; ++k) sum_wh += wF * x[k] * dh[k];
  SymTensor out(m, "Hess");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double v = d2h[i * m + j] + wF * x[j] * dh[i] + wF * x[i] * dh[j];
      if (i == j) v -= sum_wh;
      out.at(i, j) = v;
    }
  return out;
}

GradLap grad_laplacian(const AmbientMetric& g, const ScalarField& h, const Vec& x) {
  const int m = g.dim;
  const double r = radius(x);
  const double F = g.factor.value(r);
  check_metric(g, x, F);
  const Vec dh = h.grad(x);
  const std::vector<double> d2h = h.hess(x);
  GradLap out;
  out.grad.assign(m, 0.0);
  double lap_e = 0.0, cross = 0.0, g2 = 0.0;
  const double wF = g.factor.d1_over_r(r);  // F'/r
  for (int i = 0; i < m; ++i) {
    out.grad[i] = F * F * dh[i];
    lap_e += d2h[i * m + i];
    cross += wF * x[i] * dh[i];
    g2 += dh[i] * dh[i];
  }
  out.lap = F * F * (lap_e + (2.0 - m) * cross / F);
  out.grad_norm2 = F * F * g2;
  return out;
}

Vec tension_field(const MapField& phi, const AmbientMetric& g, const TargetMetric& gamma,
                  const Vec& x) {
  const int m = g.dim;
  const int n = phi.target_dim;
  const double r = radius(x);
  const double F = g.factor.value(r);
  check_metric(g, x, F);
  const Vec y = phi.value(x);
  if (norm(y) > gamma.factor.rmax())
    throw std::domain_error("tension_field: map value escapes the target domain");
  const std::vector<double> J = phi.jac(x);
  const std::vector<double> H = phi.hess(x);
  const double wF = g.factor.d1_over_r(r);  // F'/r
  Vec out(n, 0.0);
  for (int t = 0; t < n; ++t) {
    double lap_e = 0.0, cross = 0.0;
    for (int k = 0; k < m; ++k) {
      lap_e += H[(t * m + k) * m + k];
      cross += wF * x[k] * J[t * m + k];
    }
    double gterm = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double s = 0.0;
        for (int k = 0; k < m; ++k) s += J[a * m + k] * J[b * m + k];
        if (s != 0.0) gterm += gamma.christoffel(y, t, a, b) * s;
      }
    out[t] = F * F * (lap_e + (2.0 - m) * cross / F + gterm);
  }
  return out;
}

Pullback phi_pullback(const MapField& phi, const AmbientMetric& g, const TargetMetric& gamma,
                      const Vec& x) {
  const int m = g.dim;
  const int n = phi.target_dim;
  const double F = g.factor.value(radius(x));
  check_metric(g, x, F);
  const Vec y = phi.value(x);
  const double G = gamma.factor.value(norm(y));
  const std::vector<double> J = phi.jac(x);
  Pullback out;
  out.tensor = SymTensor(m, "phi_pullback");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int a = 0; a < n; ++a) s += J[a * m + i] * J[a * m + j];
      out.tensor.at(i, j) = s / (G * G);
    }
  double tr = 0.0;
  for (int i = 0; i < m; ++i) tr += out.tensor(i, i);
  out.trace = F * F * tr;
  return out;
}

double tensor_norm2(const AmbientMetric& g, const SymTensor& s, const Vec& x) {
  const double F = g.factor.value(radius(x));
  double acc = 0.0;
  for (double v : s.a) acc += v * v;
  return F * F * F * F * acc;
}

double tensor_inner(const AmbientMetric& g, const SymTensor& h, const SymTensor& s, const Vec& x) {
  const double F = g.factor.value(radius(x));
  double acc = 0.0;
  for (size_t i = 0; i < h.a.size(); ++i) acc += h.a[i] * s.a[i];
  return F * F * F * F * acc;
}

double weighted_scalar_curvature(const AmbientMetric& g, const ScalarField& f, const Vec& x) {
  const GradLap gl = grad_laplacian(g, f, x);
  return scalar_curvature(g, x) + 2.0 * gl.lap - gl.grad_norm2;
}

double ricci_frame(const AmbientMetric& g, const Vec& x, const Vec& u_dir, const Vec& v_dir) {
  const SymTensor ric = ricci(g, x);
  const double F = g.factor.value(radius(x));
  double s = 0.0;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) s += u_dir[i] * v_dir[j] * ric(i, j);
  return F * F * s;
}

}  // namespace geoflow
