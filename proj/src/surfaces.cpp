#include "geoflow/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace geoflow {

namespace {

double sphere_measure(int m) {
  // surface measure of the unit (m-1)-sphere
  if (m == 2) return 2.0 * M_PI;
  if (m == 3) return 4.0 * M_PI;
  return 2.0 * std::pow(M_PI, 0.5 * m) / std::tgamma(0.5 * m);
}

}  // namespace

double sphere_mean_curvature(const AmbientMetric& g, double R) {
  const double F = g.factor.value(R);
  return (g.dim - 1) * (F / R - g.factor.d1(R));
}

SphereGeometry sphere_geometry(const Ambient& amb, const SphereSurface& s) {
  const int m = amb.g.dim;
  const double R = s.radius;
  const double F = amb.g.factor.value(R);
  if (!(F > 0.0)) throw std::domain_error("sphere_geometry: factor not positive on the sphere");
  SphereGeometry out;
  out.H = sphere_mean_curvature(amb.g, R);
  out.principal = out.H / (m - 1);
  out.area = sphere_measure(m) * std::pow(R / F, m - 1);
  Vec p(m, 0.0);
  p[0] = R;
  const Vec df = amb.f.grad(p);
  out.e0f = -F * df[0];  // inward normal is -F * radial direction
  out.weighted_area = out.area * std::exp(-amb.f.value(p));
  return out;
}

PlaneCurve::PlaneCurve(std::vector<double> xs, std::vector<double> ys, bool closed)
    : x_(std::move(xs)), y_(std::move(ys)), closed_(closed) {
  if (x_.size() != y_.size() || x_.size() < 16)
    throw std::invalid_argument("PlaneCurve: need at least 16 vertices");
  if (closed_ && signed_area() < 0.0)
    throw std::invalid_argument("PlaneCurve: closed curves must be counterclockwise");
}

PlaneCurve PlaneCurve::circle(double R, int n, double cx, double cy) {
  std::vector<double> xs(n), ys(n);
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * M_PI * j / n;
    xs[j] = cx + R * std::cos(th);
    ys[j] = cy + R * std::sin(th);
  }
  return PlaneCurve(std::move(xs), std::move(ys), true);
}

PlaneCurve PlaneCurve::ellipse(double a, double b, int n) {
  std::vector<double> xs(n), ys(n);
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * M_PI * j / n;
    xs[j] = a * std::cos(th);
    ys[j] = b * std::sin(th);
  }
  return PlaneCurve(std::move(xs), std::move(ys), true);
}

PlaneCurve PlaneCurve::grim_reaper(double half_width, int n, double y_shift) {
  if (!(half_width > 0.0 && half_width < 0.5 * M_PI))
    throw std::invalid_argument("grim_reaper: half width must lie in (0, pi/2)");
  std::vector<double> xs(n), ys(n);
  for (int j = 0; j < n; ++j) {
    const double x = -half_width + 2.0 * half_width * j / (n - 1.0);
    xs[j] = x;
    ys[j] = -std::log(std::cos(x)) + y_shift;
  }
  return PlaneCurve(std::move(xs), std::move(ys), false);
}

double PlaneCurve::signed_area() const {
  double s = 0.0;
  const int n = size();
  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    s += x_[j] * y_[k] - x_[k] * y_[j];
  }
  return 0.5 * s;
}

double PlaneCurve::mean_spacing() const {
  const int n = size();
  double s = 0.0;
  const int segs = closed_ ? n : n - 1;
  for (int j = 0; j < segs; ++j) {
    const int k = (j + 1) % n;
    s += std::hypot(x_[k] - x_[j], y_[k] - y_[j]);
  }
  return s / segs;
}

bool PlaneCurve::spacing_within(double lo_factor, double hi_factor) const {
  const double mean = mean_spacing();
  const int n = size();
  const int segs = closed_ ? n : n - 1;
  for (int j = 0; j < segs; ++j) {
    const int k = (j + 1) % n;
    const double d = std::hypot(x_[k] - x_[j], y_[k] - y_[j]);
    if (d < lo_factor * mean || d > hi_factor * mean) return false;
  }
  return true;
}

bool PlaneCurve::is_simple() const {
  const int n = size();
  const int segs = closed_ ? n : n - 1;
  auto seg = [&](int j, double* ax, double* ay, double* bx, double* by) {
    const int k = (j + 1) % n;
    *ax = x_[j];
    *ay = y_[j];
    *bx = x_[k];
    *by = y_[k];
  };
  auto orient = [](double ax, double ay, double bx, double by, double cx, double cy) {
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  };
  for (int i = 0; i < segs; ++i) {
    double a1x, a1y, b1x, b1y;
    seg(i, &a1x, &a1y, &b1x, &b1y);
    for (int j = i + 2; j < segs; ++j) {
      if (closed_ && i == 0 && j == segs - 1) continue;  // adjacent through the wrap
      double a2x, a2y, b2x, b2y;
      seg(j, &a2x, &a2y, &b2x, &b2y);
      if (std::max(a1x, b1x) < std::min(a2x, b2x) || std::max(a2x, b2x) < std::min(a1x, b1x) ||
          std::max(a1y, b1y) < std::min(a2y, b2y) || std::max(a2y, b2y) < std::min(a1y, b1y))
        continue;
      const double o1 = orient(a1x, a1y, b1x, b1y, a2x, a2y);
      const double o2 = orient(a1x, a1y, b1x, b1y, b2x, b2y);
      const double o3 = orient(a2x, a2y, b2x, b2y, a1x, a1y);
      const double o4 = orient(a2x, a2y, b2x, b2y, b1x, b1y);
      if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return false;
    }
  }
  return true;
}

void PlaneCurve::eval(double u, double* px, double* py) const {
  if (closed_) {
    *px = periodic_cubic(x_, u);
    *py = periodic_cubic(y_, u);
  } else {
    *px = clamped_cubic(x_, u);
    *py = clamped_cubic(y_, u);
  }
}

CurveGeometry curve_geometry(const PlaneCurve& c, const Ambient& amb) {
  if (amb.g.dim != 2) throw std::invalid_argument("curve_geometry: ambient dimension must be 2");
  const int n = c.size();
  CurveGeometry out;
  out.k_euc.resize(n);
  out.H.resize(n);
  out.nx.resize(n);
  out.ny.resize(n);
  out.tx.resize(n);
  out.ty.resize(n);
  out.ds_du.resize(n);
  out.fbar.resize(n);
  out.e0f.resize(n);
  out.fs.resize(n);

  auto vertex = [&](int j) {
    int k = j;
    if (c.closed())
      k = ((j % n) + n) % n;
    else
      k = std::clamp(j, 0, n - 1);
    return std::pair<double, double>(c.x(k), c.y(k));
  };

  for (int j = 0; j < n; ++j) {
    double xu, yu, xuu, yuu;
    if (c.closed() || (j > 0 && j + 1 < n)) {
      auto [xm, ym] = vertex(j - 1);
      auto [xp, yp] = vertex(j + 1);
      auto [x0, y0] = vertex(j);
      xu = 0.5 * (xp - xm);
      yu = 0.5 * (yp - ym);
      xuu = xp - 2.0 * x0 + xm;
      yuu = yp - 2.0 * y0 + ym;
    } else {
      // one-sided second-order stencils for open ends
      const int s = (j == 0) ? 1 : -1;
      auto [x0, y0] = vertex(j);
      auto [x1, y1] = vertex(j + s);
      auto [x2, y2] = vertex(j + 2 * s);
      xu = s * (-1.5 * x0 + 2.0 * x1 - 0.5 * x2);
      yu = s * (-1.5 * y0 + 2.0 * y1 - 0.5 * y2);
      xuu = x0 - 2.0 * x1 + x2;
      yuu = y0 - 2.0 * y1 + y2;
    }
    const double sp = std::hypot(xu, yu);
    const double cross = xu * yuu - yu * xuu;
    out.k_euc[j] = cross / (sp * sp * sp);
    out.tx[j] = xu / sp;
    out.ty[j] = yu / sp;
    out.nx[j] = -out.ty[j];  // left normal; inward for counterclockwise curves
    out.ny[j] = out.tx[j];

    const Vec p = {c.x(j), c.y(j)};
    const double r = norm(p);
    const double F = amb.g.factor.value(r);
    if (!(F > 0.0)) throw std::domain_error("curve_geometry: factor not positive on the curve");
    // k_g = F (k_euc - d_n log F^{-1}) = F k_euc + <grad_euc F, n>
    const double w = amb.g.factor.d1_over_r(r);
    const double gFn = w * (p[0] * out.nx[j] + p[1] * out.ny[j]);
    out.H[j] = F * out.k_euc[j] + gFn;
    out.ds_du[j] = sp / F;

    out.fbar[j] = amb.f.value(p);
    const Vec df = amb.f.grad(p);
    out.e0f[j] = F * (df[0] * out.nx[j] + df[1] * out.ny[j]);
    out.fs[j] = F * (df[0] * out.tx[j] + df[1] * out.ty[j]);
  }

  double len = 0.0;
  for (int j = 0; j < n; ++j) len += out.ds_du[j];
  out.length = c.closed() ? len : len * (n - 1.0) / n;
  return out;
}

PlaneCurve redistribute_arclength(const PlaneCurve& c) {
  const int n = c.size();
  std::vector<double> cum(n + 1, 0.0);
  for (int j = 0; j < n; ++j) {
    const int k = (j + 1) % n;
    cum[j + 1] = cum[j] + std::hypot(c.x(k) - c.x(j), c.y(k) - c.y(j));
  }
  if (!c.closed()) {
    // keep the ends, equidistribute the interior along the current polyline
    std::vector<double> xs(n), ys(n);
    const double total = cum[n - 1];
    for (int j = 0; j < n; ++j) {
      const double target = total * j / (n - 1.0);
      const int seg = static_cast<int>(std::lower_bound(cum.begin(), cum.begin() + n, target) -
                                       cum.begin());
      const int s = std::clamp(seg - 1, 0, n - 2);
      const double w = (cum[s + 1] > cum[s]) ? (target - cum[s]) / (cum[s + 1] - cum[s]) : 0.0;
      const double u = s + w;
      double px, py;
      c.eval(u, &px, &py);
      xs[j] = px;
      ys[j] = py;
    }
    xs[0] = c.x(0);
    ys[0] = c.y(0);
    xs[n - 1] = c.x(n - 1);
    ys[n - 1] = c.y(n - 1);
    return PlaneCurve(std::move(xs), std::move(ys), false);
  }
  const double total = cum[n];
  std::vector<double> xs(n), ys(n);
  for (int j = 0; j < n; ++j) {
    const double target = total * j / n;
    const int seg = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), target) -
                                     cum.begin());
    const int s = std::clamp(seg - 1, 0, n - 1);
    const double w = (cum[s + 1] > cum[s]) ? (target - cum[s]) / (cum[s + 1] - cum[s]) : 0.0;
    double px, py;
    c.eval(s + w, &px, &py);
    xs[j] = px;
    ys[j] = py;
  }
  return PlaneCurve(std::move(xs), std::move(ys), true);
}

PlaneCurve mcf_step(const PlaneCurve& c, const Ambient& amb, double dt, const McfOptions& opts) {
  const CurveGeometry geo = curve_geometry(c, amb);
  const int n = c.size();
  double maxF = 0.0, maxH = 0.0;
  for (int j = 0; j < n; ++j) {
    maxF = std::max(maxF, amb.g.factor.value(std::hypot(c.x(j), c.y(j))));
    maxH = std::max(maxH, std::abs(geo.H[j]));
  }
  double min_sp = std::numeric_limits<double>::infinity();
  for (int j = 0; j < (c.closed() ? n : n - 1); ++j) {
    const int k = (j + 1) % n;
    min_sp = std::min(min_sp, std::hypot(c.x(k) - c.x(j), c.y(k) - c.y(j)));
  }
  if (dt > opts.cfl * min_sp * min_sp / std::max(maxF, 1e-14))
    throw std::invalid_argument("mcf_step: CFL violation");
  if (maxH * dt > opts.blowup_threshold)
    throw std::runtime_error("mcf_step: curvature blow-up, step rejected");

  std::vector<double> xs(n), ys(n);
  for (int j = 0; j < n; ++j) {
    const double F = amb.g.factor.value(std::hypot(c.x(j), c.y(j)));
    // velocity H e with e the metric-unit inward normal: coordinates F * n
    const double v = geo.H[j] * F * dt;
    xs[j] = c.x(j) + v * geo.nx[j];
    ys[j] = c.y(j) + v * geo.ny[j];
  }
  if (!c.closed()) {
    // free ends held on their vertical lines
    xs[0] = c.x(0);
    xs[n - 1] = c.x(n - 1);
  }
  PlaneCurve out(std::move(xs), std::move(ys), c.closed());
  if (opts.redistribute) out = redistribute_arclength(out);
  return out;
}

double mcf_step_sphere(double R, const Ambient& amb, int m, double dt) {
  if (amb.g.dim != m) throw std::invalid_argument("mcf_step_sphere: dimension mismatch");
  const double H = sphere_mean_curvature(amb.g, R);
  const double F = amb.g.factor.value(R);
  return R - dt * H * F;
}

SolitonResidual soliton_residual(const PlaneCurve& c, const Ambient& amb) {
  const CurveGeometry geo = curve_geometry(c, amb);
  const int n = c.size();
  SolitonResidual out;
  out.values.resize(n);
  double l2 = 0.0;
  for (int j = 0; j < n; ++j) {
    out.values[j] = geo.H[j] + geo.e0f[j];
    out.sup = std::max(out.sup, std::abs(out.values[j]));
    l2 += out.values[j] * out.values[j] * std::exp(-geo.fbar[j]) * geo.ds_du[j];
  }
  out.l2 = std::sqrt(std::max(0.0, l2));
  return out;
}

double soliton_residual_sphere(const Ambient& amb, int m, double R) {
  if (amb.g.dim != m) throw std::invalid_argument("soliton_residual_sphere: dimension mismatch");
  const SphereGeometry geo = sphere_geometry(amb, SphereSurface{R});
  return geo.H + geo.e0f;
}

double find_f_minimal_sphere(const Ambient& amb, int m, double r_lo, double r_hi, double tol) {
  auto fn = [&](double R) { return soliton_residual_sphere(amb, m, R); };
  if (fn(r_lo) * fn(r_hi) > 0.0)
    throw std::invalid_argument("find_f_minimal_sphere: no sign change in bracket");
  return brent_root(fn, r_lo, r_hi, tol);
}

PlaneCurve find_f_minimal_curve(PlaneCurve c, const Ambient& amb, double tol, int max_steps,
                                const McfOptions& opts) {
  // f-minimal curves in shrinker-type backgrounds are saddle points of the
  // weighted length: the mean of H + e0 f is the unstable direction while the
  // shape modes relax under ordinary weighted MCF. The iteration therefore
  // reverses the sign on the mean mode only.
  double best_sup = std::numeric_limits<double>::infinity();
  int best_it = 0;
  for (int it = 0; it < max_steps; ++it) {
    const CurveGeometry geo = curve_geometry(c, amb);
    const int n = c.size();
    double sup = 0.0, mean = 0.0, wsum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double res = geo.H[j] + geo.e0f[j];
      sup = std::max(sup, std::abs(res));
      mean += res * geo.ds_du[j];
      wsum += geo.ds_du[j];
    }
    mean /= wsum;
    if (sup < tol) return c;
    if (sup < 0.99 * best_sup) {
      best_sup = sup;
      best_it = it;
    } else if (it - best_it > 5000 && sup > 10 * tol) {
      throw std::runtime_error("find_f_minimal_curve: relaxation stagnates");
    }
    double maxF = 0.0;
    for (int j = 0; j < n; ++j)
      maxF = std::max(maxF, amb.g.factor.value(std::hypot(c.x(j), c.y(j))));
    const double min_sp = c.mean_spacing();
    const double dt = 0.5 * opts.cfl * min_sp * min_sp / maxF;
    std::vector<double> xs(n), ys(n);
    for (int j = 0; j < n; ++j) {
      const double F = amb.g.factor.value(std::hypot(c.x(j), c.y(j)));
      const double res = geo.H[j] + geo.e0f[j];
      const double v = (res - 2.0 * mean) * F * dt;
      xs[j] = c.x(j) + v * geo.nx[j];
      ys[j] = c.y(j) + v * geo.ny[j];
    }
    c = redistribute_arclength(PlaneCurve(std::move(xs), std::move(ys), c.closed()));
  }
  throw std::runtime_error("find_f_minimal_curve: did not converge");
}

SphereFamily construct_soliton_family(const SelfSimilarBackground& bg, double R0,
                                      const std::vector<double>& times) {
  SphereFamily fam;
  fam.times = times;
  fam.construction = "pushforward";
  fam.radii.reserve(times.size());
  Vec p(bg.dim(), 0.0);
  for (double t : times) {
    p.assign(bg.dim(), 0.0);
    p[0] = R0;
    const Vec q = bg.diffeo_inverse(p, t);
    fam.radii.push_back(norm(q));
  }
  return fam;
}

CurveFamily construct_soliton_family(const SelfSimilarBackground& bg, const PlaneCurve& seed,
                                     const std::vector<double>& times) {
  if (bg.dim() != 2)
    throw std::invalid_argument("construct_soliton_family: curve seeds need a 2d background");
  CurveFamily fam;
  fam.times = times;
  fam.construction = "pushforward";
  const int n = seed.size();
  for (double t : times) {
    std::vector<double> xs(n), ys(n);
    for (int j = 0; j < n; ++j) {
      const Vec q = bg.diffeo_inverse({seed.x(j), seed.y(j)}, t);
      xs[j] = q[0];
      ys[j] = q[1];
    }
    fam.curves.emplace_back(std::move(xs), std::move(ys), seed.closed());
  }
  return fam;
}

namespace {

double sample_field(const std::vector<double>& y, double u, bool periodic) {
  return periodic ? periodic_cubic(y, u) : clamped_cubic(y, u);
}

}  // namespace

CurveFamily reparametrize_to_mcf(const CurveFamily& family) {
  const size_t nt = family.times.size();
  if (nt < 3) throw std::invalid_argument("reparametrize_to_mcf: need at least 3 snapshots");
  const int n = family.curves.front().size();
  const bool closed = family.curves.front().closed();

  // Per-snapshot label drift rate: du/dt = -<v, T>/|x_u| with v the vertex
  // velocity of the input family at fixed label.
  std::vector<std::vector<double>> rate(nt, std::vector<double>(n, 0.0));
  for (size_t k = 0; k < nt; ++k) {
    const size_t ka = (k == 0) ? 0 : k - 1;
    const size_t kb = (k + 1 == nt) ? k : k + 1;
    const double dt = family.times[kb] - family.times[ka];
    if (!(std::abs(dt) > 0.0))
      throw std::invalid_argument("reparametrize_to_mcf: time grid too coarse");
    for (int j = 0; j < n; ++j) {
      const double vx = (family.curves[kb].x(j) - family.curves[ka].x(j)) / dt;
      const double vy = (family.curves[kb].y(j) - family.curves[ka].y(j)) / dt;
      double xu, yu;
      if (closed) {
        const int jm = (j + n - 1) % n, jp = (j + 1) % n;
        xu = 0.5 * (family.curves[k].x(jp) - family.curves[k].x(jm));
        yu = 0.5 * (family.curves[k].y(jp) - family.curves[k].y(jm));
      } else if (j > 0 && j + 1 < n) {
        xu = 0.5 * (family.curves[k].x(j + 1) - family.curves[k].x(j - 1));
        yu = 0.5 * (family.curves[k].y(j + 1) - family.curves[k].y(j - 1));
      } else {
        const int j0 = (j == 0) ? 0 : n - 2;
        xu = family.curves[k].x(j0 + 1) - family.curves[k].x(j0);
        yu = family.curves[k].y(j0 + 1) - family.curves[k].y(j0);
      }
      const double sp2 = xu * xu + yu * yu;
      rate[k][j] = -(vx * xu + vy * yu) / sp2;  // tangential part over |x_u|^2
    }
  }

  CurveFamily out;
  out.times = family.times;
  out.construction = "reparametrized";
  std::vector<double> labels(n);
  for (int j = 0; j < n; ++j) labels[j] = j;
  out.curves.reserve(nt);

  for (size_t k = 0; k < nt; ++k) {
    std::vector<double> xs(n), ys(n);
    for (int j = 0; j < n; ++j) {
      double px, py;
      family.curves[k].eval(labels[j], &px, &py);
      xs[j] = px;
      ys[j] = py;
    }
    out.curves.emplace_back(std::move(xs), std::move(ys), closed);
    if (k + 1 == nt) break;

    // RK4 substeps of the relabelling flow; the rate field is interpolated
    // linearly between the bracketing snapshots.
    const double dt = family.times[k + 1] - family.times[k];
    auto rate_at = [&](double u, double w) {
      const double r0 = sample_field(rate[k], u, closed);
      const double r1 = sample_field(rate[k + 1], u, closed);
      return (1.0 - w) * r0 + w * r1;
    };
    const int sub = 8;
    const double hs = dt / sub;
    for (int j = 0; j < n; ++j) {
      double u = labels[j];
      for (int ss = 0; ss < sub; ++ss) {
        const double w0 = static_cast<double>(ss) / sub;
        const double wh = (ss + 0.5) / sub;
        const double w1 = static_cast<double>(ss + 1) / sub;
        const double k1 = rate_at(u, w0);
        const double k2 = rate_at(u + 0.5 * hs * k1, wh);
        const double k3 = rate_at(u + 0.5 * hs * k2, wh);
        const double k4 = rate_at(u + hs * k3, w1);
        u += hs * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0;
      }
      labels[j] = closed ? u : std::clamp(u, 0.0, n - 1.0);
    }
  }
  return out;
}

CurveFamily evolve_curve_mcf(const SelfSimilarBackground& bg, PlaneCurve c, double t0, double t1,
                             double dt, int snapshot_stride, const McfOptions& opts) {
  CurveFamily fam;
  fam.construction = "mcf";
  double t = t0;
  long step = 0;
  if (!c.is_simple()) throw std::runtime_error("evolve_curve_mcf: self-intersection detected");
  fam.times.push_back(t);
  fam.curves.push_back(c);
  const long nsteps = std::lround((t1 - t0) / dt);
  for (step = 0; step < nsteps; ++step) {
    const Ambient amb = bg.slice(t);
    c = mcf_step(c, amb, dt, opts);
    t = t0 + (step + 1) * dt;
    if ((step + 1) % snapshot_stride == 0 || step + 1 == nsteps) {
      if (!c.is_simple())
        throw std::runtime_error("evolve_curve_mcf: self-intersection detected");
      fam.times.push_back(t);
      fam.curves.push_back(c);
    }
  }
  return fam;
}

SphereFamily evolve_sphere_mcf(const SelfSimilarBackground& bg, double R0, double t0, double t1,
                               double dt, int snapshot_stride) {
  SphereFamily fam;
  fam.construction = "mcf";
  double R = R0, t = t0;
  fam.times.push_back(t);
  fam.radii.push_back(R);
  const long nsteps = std::lround((t1 - t0) / dt);
  const int m = bg.dim();
  for (long step = 0; step < nsteps; ++step) {
    const Ambient amb = bg.slice(t);
    R = mcf_step_sphere(R, amb, m, dt);
    if (!(R > 0.0)) throw std::runtime_error("evolve_sphere_mcf: sphere collapsed");
    t = t0 + (step + 1) * dt;
    if ((step + 1) % snapshot_stride == 0 || step + 1 == nsteps) {
      fam.times.push_back(t);
      fam.radii.push_back(R);
    }
  }
  return fam;
}

double hausdorff_distance(const PlaneCurve& a, const PlaneCurve& b) {
  auto point_to_curve = [](double px, double py, const PlaneCurve& c) {
    double best = std::numeric_limits<double>::infinity();
    const int n = c.size();
    const int segs = c.closed() ? n : n - 1;
    for (int j = 0; j < segs; ++j) {
      const int k = (j + 1) % n;
      const double ax = c.x(j), ay = c.y(j), bx = c.x(k), by = c.y(k);
      const double dx = bx - ax, dy = by - ay;
      const double L2 = dx * dx + dy * dy;
      double w = (L2 > 0) ? ((px - ax) * dx + (py - ay) * dy) / L2 : 0.0;
      w = std::clamp(w, 0.0, 1.0);
      best = std::min(best, std::hypot(px - (ax + w * dx), py - (ay + w * dy)));
    }
    return best;
  };
  double d = 0.0;
  for (int j = 0; j < a.size(); ++j) d = std::max(d, point_to_curve(a.x(j), a.y(j), b));
  for (int j = 0; j < b.size(); ++j) d = std::max(d, point_to_curve(b.x(j), b.y(j), a));
  return d;
}

}  // namespace geoflow
