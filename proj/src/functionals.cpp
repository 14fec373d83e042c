#include "geoflow/functionals.hpp"

#include <cmath>
#include <stdexcept>

namespace geoflow {

namespace {

double unit_sphere_measure(int m) {
  if (m == 2) return 2.0 * M_PI;
  if (m == 3) return 4.0 * M_PI;
  return 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
}

// Periodic spectral first derivative (cotangent kernel), O(n^2).
std::vector<double> spectral_deriv(const std::vector<double>& y) {
  const int n = static_cast<int>(y.size());
  const double h = 2.0 * M_PI / n;
  std::vector<double> kernel(n, 0.0);
  for (int k = 1; k < n; ++k)
    kernel[k] = 0.5 * ((k % 2) ? -1.0 : 1.0) / std::tan(0.5 * k * h);
  std::vector<double> out(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int k = i - j;
      const double w = (k > 0) ? kernel[k] : -kernel[-k];
      s += w * y[j];
    }
    // derivative w.r.t. the label, du = 1 per vertex: scale from the 2pi grid
    out[i] = s * h;
  }
  return out;
}

}  // namespace

double weighted_area(const PlaneCurve& c, const Ambient& amb) {
  const int n = c.size();
  if (c.closed()) {
    const std::vector<double> xu = spectral_deriv(c.xs());
    const std::vector<double> yu = spectral_deriv(c.ys());
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const Vec p = {c.x(j), c.y(j)};
      const double F = amb.g.factor.value(norm(p));
      acc += std::exp(-amb.f.value(p)) * std::hypot(xu[j], yu[j]) / F;
    }
    return acc;
  }
  // open curves: trapezoid with second-order tangents
  const CurveGeometry geo = curve_geometry(c, amb);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
    acc += w * std::exp(-geo.fbar[j]) * geo.ds_du[j];
  }
  return acc;
}

double weighted_area_sphere(const Ambient& amb, int m, double R) {
  if (amb.g.dim != m) throw std::invalid_argument("weighted_area_sphere: dimension mismatch");
  return sphere_geometry(amb, SphereSurface{R}).weighted_area;
}

double huisken_prefactor(SolitonClass cls, int m, double T, double t) {
  switch (cls) {
    case SolitonClass::steady: return 1.0;
    case SolitonClass::shrinking:
      if (!(t < T)) throw std::domain_error("huisken_prefactor: need t < T in the shrinking case");
      return std::pow(4.0 * M_PI * (T - t), -0.5 * (m - 1));
    case SolitonClass::expanding:
      if (!(t > T)) throw std::domain_error("huisken_prefactor: need t > T in the expanding case");
      return std::pow(4.0 * M_PI * (t - T), -0.5 * (m - 1));
  }
  return 1.0;
}

std::vector<double> huisken_phi(const std::vector<double>& times,
                                const std::vector<double>& area_f, SolitonClass cls, int m,
                                double T) {
  if (times.size() != area_f.size())
    throw std::invalid_argument("huisken_phi: times/areas length mismatch");
  std::vector<double> phi(times.size());
  for (size_t i = 0; i < times.size(); ++i)
    phi[i] = huisken_prefactor(cls, m, T, times[i]) * area_f[i];
  return phi;
}

FunctionalBreakdown f_alpha_radial(const Ambient& amb, int m, double a, double b, int nquad) {
  if (amb.g.dim != m) throw std::invalid_argument("f_alpha_radial: dimension mismatch");
  const double omega = unit_sphere_measure(m);
  FunctionalBreakdown out;

  auto integrand = [&](double r) {
    if (r < 1e-12) return 0.0;
    Vec x(m, 0.0);
    x[0] = r;
    const double F = amb.g.factor.value(r);
    const double rinf = weighted_scalar_curvature(amb.g, amb.f, x);
    const double phi2 = phi_pullback(amb.phi, amb.g, amb.gamma, x).trace;
    return (rinf - amb.alpha * phi2) * std::exp(-amb.f.value(x)) * std::pow(F, -m) *
           std::pow(r, m - 1) * omega;
  };
  out.bulk = simpson(integrand, a, b, nquad);
  const int nsamp = 65;
  out.bulk_samples.resize(nsamp);
  for (int i = 0; i < nsamp; ++i) out.bulk_samples[i] = integrand(a + (b - a) * i / (nsamp - 1.0));

  auto boundary_term = [&](double R, double inward_sign) {
    // inward_sign = -1 at the outer sphere (normal points to smaller r),
    // +1 at the inner sphere of an annulus.
    Vec x(m, 0.0);
    x[0] = R;
    const double F = amb.g.factor.value(R);
    const double H = inward_sign * -1.0 * sphere_mean_curvature(amb.g, R);
    const Vec df = amb.f.grad(x);
    const double e0f = inward_sign * F * df[0];
    const double area = omega * std::pow(R / F, m - 1);
    return (H + e0f) * std::exp(-amb.f.value(x)) * area;
  };
  double bdry = boundary_term(b, -1.0);
  out.boundary_samples.push_back(bdry);
  if (a > 1e-12) {
    const double inner = boundary_term(a, +1.0);
    out.boundary_samples.push_back(inner);
    bdry += inner;
  }
  out.boundary = bdry;
  out.total = out.bulk + 2.0 * out.boundary;
  return out;
}

FDReport variation_delta_f_disk(const Ambient& amb, int m, double a, double b,
                                const RadialProfile& eta, const RadialProfile& vtheta_profile,
                                const Vec& vtheta_dir, double eps, double tol, int nquad) {
  const RadialProfile F = amb.g.factor;

  auto perturbed_ambient = [&](double e) {
    // h = eta g: conformal factor F_eps = F (1 + e eta)^{-1/2},
    // ell = tr_g h / 2 = m eta / 2.
    Ambient out = amb;
    RadialProfile et = eta;
    out.g.factor = RadialProfile::make(
        [F, et, e](double r) { return F.value(r) / std::sqrt(1.0 + e * et.value(r)); },
        [F, et, e](double r) {
          const double s = 1.0 + e * et.value(r);
          return F.d1(r) / std::sqrt(s) - 0.5 * F.value(r) * e * et.d1(r) * std::pow(s, -1.5);
        },
        [F, et, e](double r) {
          const double s = 1.0 + e * et.value(r);
          const double sp = e * et.d1(r), spp = e * et.d2(r);
          return F.d2(r) / std::sqrt(s) - F.d1(r) * sp * std::pow(s, -1.5) -
                 0.5 * F.value(r) * spp * std::pow(s, -1.5) +
                 0.75 * F.value(r) * sp * sp * std::pow(s, -2.5);
        },
        F.smooth_at_origin());
    const ScalarField f0 = amb.f;
    RadialProfile et2 = eta;
    const double half_m = 0.5 * m;
    out.f.value = [f0, et2, e, half_m](const Vec& x) {
      return f0.value(x) + e * half_m * et2.value(norm(x));
    };
    ScalarField ell = ScalarField::radial(et2);
    out.f.grad = [f0, ell, e, half_m](const Vec& x) {
      Vec g = f0.grad(x);
      const Vec g2 = ell.grad(x);
      for (size_t i = 0; i < g.size(); ++i) g[i] += e * half_m * g2[i];
      return g;
    };
    out.f.hess = [f0, ell, e, half_m](const Vec& x) {
      std::vector<double> h = f0.hess(x);
      const std::vector<double> h2 = ell.hess(x);
      for (size_t i = 0; i < h.size(); ++i) h[i] += e * half_m * h2[i];
      return h;
    };
    // phi + e vtheta along a fixed target direction
    const MapField phi0 = amb.phi;
    const MapField dphi = MapField::radial(vtheta_profile, vtheta_dir, m);
    MapField phie;
    phie.target_dim = phi0.target_dim;
    phie.value = [phi0, dphi, e](const Vec& x) {
      Vec y = phi0.value(x);
      const Vec d = dphi.value(x);
      for (size_t i = 0; i < y.size(); ++i) y[i] += e * d[i];
      return y;
    };
    phie.jac = [phi0, dphi, e](const Vec& x) {
      std::vector<double> J = phi0.jac(x);
      const std::vector<double> D = dphi.jac(x);
      for (size_t i = 0; i < J.size(); ++i) J[i] += e * D[i];
      return J;
    };
    phie.hess = [phi0, dphi, e](const Vec& x) {
      std::vector<double> H = phi0.hess(x);
      const std::vector<double> D = dphi.hess(x);
      for (size_t i = 0; i < H.size(); ++i) H[i] += e * D[i];
      return H;
    };
    out.phi = phie;
    return out;
  };

  const double fp = f_alpha_radial(perturbed_ambient(eps), m, a, b, nquad).total;
  const double fm = f_alpha_radial(perturbed_ambient(-eps), m, a, b, nquad).total;
  const double lhs = (fp - fm) / (2.0 * eps);

  // RHS of the first-variation formula for h = eta g.
  const double omega = unit_sphere_measure(m);
  const MapField dphi = MapField::radial(vtheta_profile, vtheta_dir, m);
  auto rhs_bulk = [&](double r) {
    if (r < 1e-12) return 0.0;
    Vec x(m, 0.0);
    x[0] = r;
    const double Fv = amb.g.factor.value(r);
    const SymTensor ric = ricci(amb.g, x);
    const SymTensor hf = hessian(amb.g, amb.f, x);
    const Pullback pb = phi_pullback(amb.phi, amb.g, amb.gamma, x);
    // <h, S> with h = eta g: eta tr_g S
    double tr = 0.0;
    for (int i = 0; i < m; ++i)
      tr += Fv * Fv * (ric(i, i) + hf(i, i) - amb.alpha * pb.tensor(i, i));
    double inner = eta.value(r) * tr;

    double map_term = 0.0;
    if (amb.alpha != 0.0) {
      const Vec tau = tension_field(amb.phi, amb.g, amb.gamma, x);
      const GradLap gl = grad_laplacian(amb.g, amb.f, x);
      const std::vector<double> J = amb.phi.jac(x);
      const Vec v = dphi.value(x);
      const Vec y = amb.phi.value(x);
      for (int t = 0; t < amb.phi.target_dim; ++t) {
        double adv = 0.0;
        for (int i = 0; i < m; ++i) adv += gl.grad[i] * J[t * m + i];
        map_term += (tau[t] - adv) * v[t];
      }
      const double G = amb.gamma.factor.value(norm(y));
      map_term /= G * G;
    }
    return (-inner + 2.0 * amb.alpha * map_term) * std::exp(-amb.f.value(x)) *
           std::pow(Fv, -m) * std::pow(r, m - 1) * omega;
  };
  double rhs = simpson(rhs_bulk, a, b, nquad);

  auto rhs_boundary = [&](double R, double inward_sign) {
    Vec x(m, 0.0);
    x[0] = R;
    const double Fv = amb.g.factor.value(R);
    const double H = inward_sign * -1.0 * sphere_mean_curvature(amb.g, R);
    const Vec df = amb.f.grad(x);
    const double e0f = inward_sign * Fv * df[0];
    const double area = omega * std::pow(R / Fv, m - 1);
    // h^{ij} A_ij = eta H, h^{00} = eta for h = eta g
    double v = -(eta.value(R) * H + eta.value(R) * (H + e0f));
    if (amb.alpha != 0.0) {
      const std::vector<double> J = amb.phi.jac(x);
      const Vec vth = dphi.value(x);
      const Vec y = amb.phi.value(x);
      const double G = amb.gamma.factor.value(norm(y));
      double ip = 0.0;
      for (int t = 0; t < amb.phi.target_dim; ++t)
        ip += (inward_sign * Fv * J[t * m + 0]) * vth[t];
      v += 2.0 * amb.alpha * ip / (G * G);
    }
    return v * std::exp(-amb.f.value(x)) * area;
  };
  rhs += rhs_boundary(b, -1.0);
  if (a > 1e-12) rhs += rhs_boundary(a, +1.0);

  FDReport rep = make_report("variation_delta_F_disk", lhs, rhs, tol);
  rep.eps = eps;
  rep.n = nquad;
  return rep;
}

namespace {

struct HarnackInputs {
  CurveGeometry geo;
  std::vector<double> Hs;     // dH/ds along the curve
  std::vector<double> dHdt;   // at fixed label
};

HarnackInputs harnack_inputs(const CurveFamily& family,
                             const std::function<Ambient(double)>& ambient, size_t k) {
  if (family.times.size() < 3 || k == 0 || k + 1 >= family.times.size())
    throw std::invalid_argument("harnack: need snapshots on both sides of the chosen time");
  HarnackInputs in;
  const Ambient amb = ambient(family.times[k]);
  in.geo = curve_geometry(family.curves[k], amb);
  const CurveGeometry gm = curve_geometry(family.curves[k - 1], ambient(family.times[k - 1]));
  const CurveGeometry gp = curve_geometry(family.curves[k + 1], ambient(family.times[k + 1]));
  const int n = family.curves[k].size();
  const bool closed = family.curves[k].closed();
  in.dHdt.resize(n);
  in.Hs.resize(n);
  const double dt = family.times[k + 1] - family.times[k - 1];
  for (int j = 0; j < n; ++j) in.dHdt[j] = (gp.H[j] - gm.H[j]) / dt;
  for (int j = 0; j < n; ++j) {
    const int jm = closed ? (j + n - 1) % n : std::max(j - 1, 0);
    const int jp = closed ? (j + 1) % n : std::min(j + 1, n - 1);
    const double dsm = 0.5 * (in.geo.ds_du[jm] + in.geo.ds_du[j]);
    const double dsp = 0.5 * (in.geo.ds_du[j] + in.geo.ds_du[jp]);
    if (j == jm)
      in.Hs[j] = (in.geo.H[jp] - in.geo.H[j]) / dsp;
    else if (j == jp)
      in.Hs[j] = (in.geo.H[j] - in.geo.H[jm]) / dsm;
    else
      in.Hs[j] = (in.geo.H[jp] - in.geo.H[jm]) / (dsm + dsp);
  }
  return in;
}

HarnackReport assemble_harnack(const CurveFamily& family,
                               const std::function<Ambient(double)>& ambient, size_t k,
                               HarnackVector vmode, bool curvature_terms,
                               double interior_fraction) {
  const HarnackInputs in = harnack_inputs(family, ambient, k);
  const Ambient amb = ambient(family.times[k]);
  const PlaneCurve& c = family.curves[k];
  const int n = c.size();
  const int skip = c.closed() ? 0
                              : static_cast<int>(std::floor(0.5 * (1.0 - interior_fraction) * n));
  HarnackReport rep;
  for (int j = skip; j < n - skip; ++j) {
    const double v = (vmode == HarnackVector::minus_grad_f) ? -in.geo.fs[j] : 0.0;
    const double dHdt = in.dHdt[j];
    const double vgradh = 2.0 * v * in.Hs[j];
    const double avv = in.geo.H[j] * v * v;  // A(T,T) = H for curves
    double r0i = 0.0, gradR = 0.0, hr00 = 0.0, alphaA = 0.0;
    if (curvature_terms) {
      const Vec p = {c.x(j), c.y(j)};
      const double r = norm(p);
      const double F = amb.g.factor.value(r);
      const double K = gauss_curvature_2d(amb.g, p);
      // 2d: Ric = K g, so R^{0i} tangential-normal components vanish.
      r0i = 0.0;
      const AmbientMetric g = amb.g;
      auto scalR = [&g](double rr) {
        Vec q = {std::max(rr, 1e-9), 0.0};
        return 2.0 * gauss_curvature_2d(g, q);
      };
      const double dRdr = fd_deriv4(scalR, std::max(r, 1e-4), 1e-5);
      const double nr = (r > 1e-12) ? (p[0] * in.geo.nx[j] + p[1] * in.geo.ny[j]) / r : 0.0;
      gradR = -0.5 * F * nr * dRdr;  // -1/2 nabla_0 R with e0 = F n
      hr00 = -in.geo.H[j] * K;
      if (amb.alpha != 0.0) {
        const std::vector<double> J = amb.phi.jac(p);
        const Vec y = amb.phi.value(p);
        const double G = amb.gamma.factor.value(norm(y));
        double phis2 = 0.0;
        for (int t = 0; t < amb.phi.target_dim; ++t) {
          const double dps = F * (J[t * 2 + 0] * in.geo.tx[j] + J[t * 2 + 1] * in.geo.ty[j]);
          phis2 += dps * dps;
        }
        alphaA = amb.alpha * in.geo.H[j] * phis2 / (G * G);
      }
    }
    rep.indices.push_back(j);
    rep.dH_dt.push_back(dHdt);
    rep.term_VgradH.push_back(vgradh);
    rep.term_AVV.push_back(avv);
    rep.term_R0i.push_back(r0i);
    rep.term_gradR.push_back(gradR);
    rep.term_HR00.push_back(hr00);
    rep.term_alphaA.push_back(alphaA);
    rep.total.push_back(dHdt + vgradh + avv + r0i + gradR + hr00 + alphaA);
  }
  double l2 = 0.0;
  for (size_t i = 0; i < rep.total.size(); ++i) {
    rep.sup = std::max(rep.sup, std::abs(rep.total[i]));
    l2 += rep.total[i] * rep.total[i];
  }
  rep.l2 = std::sqrt(l2 / std::max<size_t>(rep.total.size(), 1));
  return rep;
}

}  // namespace

HarnackReport harnack_Z(const CurveFamily& family, const std::function<Ambient(double)>& ambient,
                        size_t k, HarnackVector vmode, double interior_fraction) {
  return assemble_harnack(family, ambient, k, vmode, false, interior_fraction);
}

HarnackReport extended_harnack(const CurveFamily& family, const SelfSimilarBackground& bg,
                               size_t k, double interior_fraction, double hypothesis_tol) {
  if (bg.params().soliton_class != SolitonClass::steady)
    throw std::invalid_argument("extended_harnack: background must be a steady soliton");
  // Cor hypotheses at the first snapshot: H + e0 f = 0 and normal map
  // derivative zero.
  const Ambient amb0 = bg.slice(family.times.front());
  const SolitonResidual res0 = soliton_residual(family.curves.front(), amb0);
  const int n = family.curves.front().size();
  const int skip = family.curves.front().closed()
                       ? 0
                       : static_cast<int>(std::floor(0.5 * (1.0 - interior_fraction) * n));
  double sup0 = 0.0;
  for (int j = skip; j < n - skip; ++j) sup0 = std::max(sup0, std::abs(res0.values[j]));
  if (sup0 > hypothesis_tol)
    throw std::invalid_argument(
        "extended_harnack: family is not a mean curvature soliton at the initial time "
        "(sup residual " +
        std::to_string(sup0) + ")");
  if (amb0.alpha != 0.0) {
    const CurveGeometry geo = curve_geometry(family.curves.front(), amb0);
    for (int j = skip; j < n - skip; ++j) {
      const Vec p = {family.curves.front().x(j), family.curves.front().y(j)};
      const std::vector<double> J = amb0.phi.jac(p);
      const double F = amb0.g.factor.value(norm(p));
      for (int t = 0; t < amb0.phi.target_dim; ++t) {
        const double d0 = F * (J[t * 2 + 0] * geo.nx[j] + J[t * 2 + 1] * geo.ny[j]);
        if (std::abs(d0) > hypothesis_tol)
          throw std::invalid_argument("extended_harnack: normal map derivative is not zero");
      }
    }
  }
  auto ambient = [&bg](double t) { return bg.slice(t); };
  return assemble_harnack(family, ambient, k, HarnackVector::minus_grad_f, true,
                          interior_fraction);
}

DerivativeIdentityRhs derivative_identity_rhs_radial(const Ambient& amb, int m, double a, double b, double dH_dt_outer,
                        int nquad) {
  const double omega = unit_sphere_measure(m);
  DerivativeIdentityRhs out;
  auto bulk = [&](double r) {
    if (r < 1e-12) return 0.0;
    Vec x(m, 0.0);
    x[0] = r;
    const double F = amb.g.factor.value(r);
    const SymTensor ric = ricci(amb.g, x);
    const SymTensor hf = hessian(amb.g, amb.f, x);
    const Pullback pb = phi_pullback(amb.phi, amb.g, amb.gamma, x);
    SymTensor S(m, "modified_flow_defect");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        S.at(i, j) = ric(i, j) + hf(i, j) - amb.alpha * pb.tensor(i, j);
    double v = tensor_norm2(amb.g, S, x);
    if (amb.alpha != 0.0) {
      const Vec tau = tension_field(amb.phi, amb.g, amb.gamma, x);
      const GradLap gl = grad_laplacian(amb.g, amb.f, x);
      const std::vector<double> J = amb.phi.jac(x);
      const Vec y = amb.phi.value(x);
      const double G = amb.gamma.factor.value(norm(y));
      double e2 = 0.0;
      for (int t = 0; t < amb.phi.target_dim; ++t) {
        double adv = 0.0;
        for (int i = 0; i < m; ++i) adv += gl.grad[i] * J[t * m + i];
        e2 += (tau[t] - adv) * (tau[t] - adv);
      }
      v += amb.alpha * e2 / (G * G);
    }
    return 2.0 * v * std::exp(-amb.f.value(x)) * std::pow(F, -m) * std::pow(r, m - 1) * omega;
  };
  out.bulk = simpson(bulk, a, b, nquad);

  // Boundary integrand for radial data: tangential gradients vanish, so only
  // dH/dt - 1/2 nabla_0 R - H R_00 survives (2 R^{0i} grad_i f = 0 likewise).
  {
    Vec x(m, 0.0);
    x[0] = b;
    const double F = amb.g.factor.value(b);
    const double H = sphere_mean_curvature(amb.g, b);
    const AmbientMetric g = amb.g;
    auto scalR = [&g, m](double rr) {
      Vec q(m, 0.0);
      q[0] = std::max(rr, 1e-9);
      return scalar_curvature(g, q);
    };
    const double dRdr = fd_deriv4(scalR, b, 1e-5);
    const double grad0R = -F * dRdr;  // e0 = -F d_r (inward)
    Vec nrm(m, 0.0);
    nrm[0] = -1.0;
    const double R00 = ricci_frame(amb.g, x, nrm, nrm);
    const double area = omega * std::pow(b / F, m - 1);
    const double integrand = dH_dt_outer - 0.5 * grad0R - H * R00;
    out.boundary = 2.0 * integrand * std::exp(-amb.f.value(x)) * area;
  }
  return out;
}

DerivativeIdentityRhs derivative_identity_rhs_curve(const CurveFamily& family, const SelfSimilarBackground& bg, size_t k,
                       double interior_fraction) {
  DerivativeIdentityRhs out;
  const double t = family.times[k];
  const Ambient amb = bg.slice(t);
  const PlaneCurve& c = family.curves[k];

  // bulk: quadrature of the squared modified-flow defect over the bounding box
  double xmin = c.x(0), xmax = c.x(0), ymin = c.y(0), ymax = c.y(0);
  for (int j = 0; j < c.size(); ++j) {
    xmin = std::min(xmin, c.x(j));
    xmax = std::max(xmax, c.x(j));
    ymin = std::min(ymin, c.y(j));
    ymax = std::max(ymax, c.y(j));
  }
  ymin -= 1.0;
  const int nq = 33;
  double acc = 0.0;
  for (int iy = 0; iy < nq; ++iy)
    for (int ix = 0; ix < nq; ++ix) {
      const Vec p = {xmin + (xmax - xmin) * ix / (nq - 1.0),
                     ymin + (ymax - ymin) * iy / (nq - 1.0)};
      const SymTensor ric = ricci(amb.g, p);
      const SymTensor hf = hessian(amb.g, amb.f, p);
      const Pullback pb = phi_pullback(amb.phi, amb.g, amb.gamma, p);
      SymTensor S(2, "modified_flow_defect");
      for (int i = 0; i < 2; ++i)
        for (int j2 = 0; j2 < 2; ++j2)
          S.at(i, j2) = ric(i, j2) + hf(i, j2) - amb.alpha * pb.tensor(i, j2);
      acc += 2.0 * tensor_norm2(amb.g, S, p) * std::exp(-amb.f.value(p));
    }
  out.bulk = acc * (xmax - xmin) * (ymax - ymin) / (nq * nq);

  // boundary: the extended Harnack integrand integrated over the curve
  auto ambient = [&bg](double tt) { return bg.slice(tt); };
  const HarnackReport rep =
      assemble_harnack(family, ambient, k, HarnackVector::minus_grad_f, true, interior_fraction);
  const CurveGeometry geo = curve_geometry(c, amb);
  double bdry = 0.0;
  for (size_t i = 0; i < rep.indices.size(); ++i) {
    const int j = rep.indices[i];
    bdry += rep.total[i] * std::exp(-geo.fbar[j]) * geo.ds_du[j];
  }
  out.boundary = 2.0 * bdry;
  return out;
}

}  // namespace geoflow
