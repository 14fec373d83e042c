#include "geoflow/torus.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace geoflow {

TorusGrid::TorusGrid(int n) : n_(n) {
  if (n < 8 || n % 2) throw std::invalid_argument("TorusGrid: n must be even and >= 8");
  d1_.assign(n * n, 0.0);
  const double h = 2.0 * M_PI / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int k = i - j;
      const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
      d1_[i * n + j] = 0.5 * sgn / std::tan(0.5 * k * h);
    }
}

TorusField TorusGrid::dx(const TorusField& u) const {
  TorusField out(n_);
  for (int iy = 0; iy < n_; ++iy) {
    const double* row = &u.a[iy * n_];
    for (int ix = 0; ix < n_; ++ix) {
      const double* drow = &d1_[ix * n_];
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += drow[j] * row[j];
      out.at(ix, iy) = s;
    }
  }
  return out;
}

TorusField TorusGrid::dy(const TorusField& u) const {
  TorusField out(n_);
  for (int iy = 0; iy < n_; ++iy) {
    const double* drow = &d1_[iy * n_];
    for (int ix = 0; ix < n_; ++ix) {
      double s = 0.0;
      for (int j = 0; j < n_; ++j) s += drow[j] * u(ix, j);
      out.at(ix, iy) = s;
    }
  }
  return out;
}

double TorusGrid::integral(const TorusField& u) const {
  double s = 0.0;
  for (double v : u.a) s += v;
  return s * cell_area();
}

TorusState TorusState::conformal(const TorusGrid& grid, const TorusField& w,
                                 const std::vector<TorusField>& phi, const TorusField& f) {
  TorusState s;
  s.n = grid.n();
  s.g11 = TorusField(s.n);
  s.g12 = TorusField(s.n);
  s.g22 = TorusField(s.n);
  for (int i = 0; i < s.n * s.n; ++i) {
    const double e2w = std::exp(2.0 * w.a[i]);
    s.g11.a[i] = e2w;
    s.g22.a[i] = e2w;
  }
  s.phi = phi;
  s.f = f;
  return s;
}

namespace {

struct Node {
  double g[2][2], ginv[2][2], det;
};

Node node_metric(const TorusState& s, int idx) {
  Node n;
  n.g[0][0] = s.g11.a[idx];
  n.g[0][1] = n.g[1][0] = s.g12.a[idx];
  n.g[1][1] = s.g22.a[idx];
  n.det = n.g[0][0] * n.g[1][1] - n.g[0][1] * n.g[0][1];
  n.ginv[0][0] = n.g[1][1] / n.det;
  n.ginv[1][1] = n.g[0][0] / n.det;
  n.ginv[0][1] = n.ginv[1][0] = -n.g[0][1] / n.det;
  return n;
}

}  // namespace

TorusGeometry torus_geometry(const TorusGrid& grid, const TorusState& s,
                             const TargetMetric& gamma) {
  const int n = grid.n();
  const int nn = n * n;
  const int nphi = static_cast<int>(s.phi.size());
  TorusGeometry out;

  // First derivatives of the metric.
  const TorusField dg[3][2] = {{grid.dx(s.g11), grid.dy(s.g11)},
                               {grid.dx(s.g12), grid.dy(s.g12)},
                               {grid.dx(s.g22), grid.dy(s.g22)}};
  auto dgij = [&](int i, int j, int dir, int idx) {
    const int comp = (i == 0 && j == 0) ? 0 : (i == 1 && j == 1) ? 2 : 1;
    return dg[comp][dir].a[idx];
  };

  // Christoffel fields Gamma^k_ij (symmetric in ij): 6 components.
  TorusField Gam[2][2][2];
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) Gam[k][i][j] = TorusField(n);
  for (int idx = 0; idx < nn; ++idx) {
    const Node nd = node_metric(s, idx);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
          double v = 0.0;
          for (int l = 0; l < 2; ++l)
            v += 0.5 * nd.ginv[k][l] * (dgij(j, l, i, idx) + dgij(i, l, j, idx) -
                                        dgij(i, j, l, idx));
          Gam[k][i][j].a[idx] = v;
          Gam[k][j][i].a[idx] = v;
        }
  }

  // Derivatives of the Christoffel fields, then the full curvature contraction
  // with the conventions R^l_ijk = d_j Gamma^l_ik - d_i Gamma^l_jk + Gamma^m_ik
  // Gamma^l_jm - Gamma^m_jk Gamma^l_im, R_ij = g^{kl} R_ikjl.
  TorusField dGam[2][2][2][2];
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        dGam[k][i][j][0] = grid.dx(Gam[k][i][j]);
        dGam[k][i][j][1] = grid.dy(Gam[k][i][j]);
      }

  out.R = TorusField(n);
  out.sqrt_det = TorusField(n);
  for (int idx = 0; idx < nn; ++idx) {
    const Node nd = node_metric(s, idx);
    double Rlow[2][2][2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
          double Rup[2];
          for (int l = 0; l < 2; ++l) {
            double v = dGam[l][i][k][j].a[idx] - dGam[l][j][k][i].a[idx];
            for (int m = 0; m < 2; ++m)
              v += Gam[m][i][k].a[idx] * Gam[l][j][m].a[idx] -
                   Gam[m][j][k].a[idx] * Gam[l][i][m].a[idx];
            Rup[l] = v;
          }
          for (int l = 0; l < 2; ++l)
            Rlow[i][j][k][l] = nd.g[0][l] * Rup[0] + nd.g[1][l] * Rup[1];
        }
    double R = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) R += nd.ginv[i][j] * nd.ginv[k][l] * Rlow[i][k][j][l];
    out.R.a[idx] = R;
    out.sqrt_det.a[idx] = std::sqrt(nd.det);
  }

  // Weight function derivatives.
  const TorusField fx = grid.dx(s.f), fy = grid.dy(s.f);
  const TorusField fxx = grid.dx(fx), fxy = grid.dy(fx), fyy = grid.dy(fy);
  out.hess_f_11 = TorusField(n);
  out.hess_f_12 = TorusField(n);
  out.hess_f_22 = TorusField(n);
  out.lap_f = TorusField(n);
  out.grad_f_sq = TorusField(n);
  for (int idx = 0; idx < nn; ++idx) {
    const Node nd = node_metric(s, idx);
    const double df[2] = {fx.a[idx], fy.a[idx]};
    const double d2f[2][2] = {{fxx.a[idx], fxy.a[idx]}, {fxy.a[idx], fyy.a[idx]}};
    double hess[2][2];
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double v = d2f[i][j];
        for (int k = 0; k < 2; ++k) v -= Gam[k][i][j].a[idx] * df[k];
        hess[i][j] = v;
      }
    out.hess_f_11.a[idx] = hess[0][0];
    out.hess_f_12.a[idx] = hess[0][1];
    out.hess_f_22.a[idx] = hess[1][1];
    double lap = 0.0, g2 = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        lap += nd.ginv[i][j] * hess[i][j];
        g2 += nd.ginv[i][j] * df[i] * df[j];
      }
    out.lap_f.a[idx] = lap;
    out.grad_f_sq.a[idx] = g2;
  }

  // Map derivatives, tension field and pullback.
  out.tension.assign(nphi, TorusField(n));
  out.advect.assign(nphi, TorusField(n));
  out.pullback_11 = TorusField(n);
  out.pullback_12 = TorusField(n);
  out.pullback_22 = TorusField(n);
  out.grad_phi_sq = TorusField(n);
  if (nphi > 0) {
    std::vector<TorusField> px(nphi), py(nphi), pxx(nphi), pxy(nphi), pyy(nphi);
    for (int a = 0; a < nphi; ++a) {
      px[a] = grid.dx(s.phi[a]);
      py[a] = grid.dy(s.phi[a]);
      pxx[a] = grid.dx(px[a]);
      pxy[a] = grid.dy(px[a]);
      pyy[a] = grid.dy(py[a]);
    }
    for (int idx = 0; idx < nn; ++idx) {
      const Node nd = node_metric(s, idx);
      Vec y(nphi);
      for (int a = 0; a < nphi; ++a) y[a] = s.phi[a].a[idx];
      const std::vector<double> gab = gamma.components(y);
      const double df[2] = {fx.a[idx], fy.a[idx]};
      double pb[2][2] = {{0, 0}, {0, 0}};
      for (int a = 0; a < nphi; ++a) {
        const double dp[2] = {px[a].a[idx], py[a].a[idx]};
        for (int b = 0; b < nphi; ++b) {
          const double dq[2] = {px[b].a[idx], py[b].a[idx]};
          const double w = gab[a * nphi + b];
          if (w == 0.0) continue;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) pb[i][j] += w * dp[i] * dq[j];
        }
      }
      out.pullback_11.a[idx] = pb[0][0];
      out.pullback_12.a[idx] = pb[0][1];
      out.pullback_22.a[idx] = pb[1][1];
      double trp = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) trp += nd.ginv[i][j] * pb[i][j];
      out.grad_phi_sq.a[idx] = trp;

      for (int t = 0; t < nphi; ++t) {
        const double d2p[2][2] = {{pxx[t].a[idx], pxy[t].a[idx]}, {pxy[t].a[idx], pyy[t].a[idx]}};
        const double dp[2] = {px[t].a[idx], py[t].a[idx]};
        double tau = 0.0, adv = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            double v = d2p[i][j];
            for (int k = 0; k < 2; ++k) v -= Gam[k][i][j].a[idx] * dp[k];
            tau += nd.ginv[i][j] * v;
            adv += nd.ginv[i][j] * df[i] * dp[j];
          }
        // target Christoffel contribution g^{ij} Gamma^t_ab d_i phi^a d_j phi^b
        double gterm = 0.0;
        for (int a = 0; a < nphi; ++a)
          for (int b = 0; b < nphi; ++b) {
            double s2 = 0.0;
            const double dpa[2] = {px[a].a[idx], py[a].a[idx]};
            const double dpb[2] = {px[b].a[idx], py[b].a[idx]};
            for (int i = 0; i < 2; ++i)
              for (int j = 0; j < 2; ++j) s2 += nd.ginv[i][j] * dpa[i] * dpb[j];
            if (s2 != 0.0) gterm += gamma.christoffel(y, t, a, b) * s2;
          }
        out.tension[t].a[idx] = tau + gterm;
        out.advect[t].a[idx] = adv;
      }
    }
  }
  return out;
}

FunctionalBreakdown f_alpha_torus(const TorusGrid& grid, const TorusState& s,
                                  const TargetMetric& gamma, double alpha) {
  const TorusGeometry geo = torus_geometry(grid, s, gamma);
  const int nn = s.n * s.n;
  FunctionalBreakdown out;
  out.bulk_samples.resize(nn);
  double acc = 0.0;
  for (int idx = 0; idx < nn; ++idx) {
    const double r_inf = geo.R.a[idx] + 2.0 * geo.lap_f.a[idx] - geo.grad_f_sq.a[idx];
    const double integrand = (r_inf - alpha * geo.grad_phi_sq.a[idx]) *
                             std::exp(-s.f.a[idx]) * geo.sqrt_det.a[idx];
    out.bulk_samples[idx] = integrand;
    acc += integrand;
  }
  out.bulk = acc * grid.cell_area();
  out.boundary = 0.0;
  out.total = out.bulk + 2.0 * out.boundary;
  return out;
}

ModifiedFlowRates modified_flow_rates(const TorusGrid& grid, const TorusState& s,
                                      const TargetMetric& gamma, double alpha) {
  const TorusGeometry geo = torus_geometry(grid, s, gamma);
  const int n = s.n, nn = n * n;
  const int nphi = static_cast<int>(s.phi.size());
  ModifiedFlowRates out;
  out.dg11 = TorusField(n);
  out.dg12 = TorusField(n);
  out.dg22 = TorusField(n);
  out.df = TorusField(n);
  out.tr_h_half_minus_ell = TorusField(n);
  out.dphi.assign(nphi, TorusField(n));
  for (int idx = 0; idx < nn; ++idx) {
    const Node nd = node_metric(s, idx);
    const double half_R = 0.5 * geo.R.a[idx];
    const double h[2][2] = {
        {-2.0 * (half_R * nd.g[0][0] + geo.hess_f_11.a[idx] - alpha * geo.pullback_11.a[idx]),
         -2.0 * (half_R * nd.g[0][1] + geo.hess_f_12.a[idx] - alpha * geo.pullback_12.a[idx])},
        {-2.0 * (half_R * nd.g[0][1] + geo.hess_f_12.a[idx] - alpha * geo.pullback_12.a[idx]),
         -2.0 * (half_R * nd.g[1][1] + geo.hess_f_22.a[idx] - alpha * geo.pullback_22.a[idx])}};
    out.dg11.a[idx] = h[0][0];
    out.dg12.a[idx] = h[0][1];
    out.dg22.a[idx] = h[1][1];
    out.df.a[idx] = -geo.R.a[idx] - geo.lap_f.a[idx] + alpha * geo.grad_phi_sq.a[idx];
    double trh = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) trh += nd.ginv[i][j] * h[i][j];
    out.tr_h_half_minus_ell.a[idx] = 0.5 * trh - out.df.a[idx];
    for (int t = 0; t < nphi; ++t)
      out.dphi[t].a[idx] = geo.tension[t].a[idx] - geo.advect[t].a[idx];
  }
  return out;
}

TorusState modified_flow_step(const TorusGrid& grid, const TorusState& s,
                              const TargetMetric& gamma, double alpha, double dt,
                              const ModifiedFlowOptions& opts) {
  const int nn = s.n * s.n;
  double min_eig = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < nn; ++idx) {
    const double a = s.g11.a[idx], b = s.g12.a[idx], c = s.g22.a[idx];
    const double disc = std::sqrt((a - c) * (a - c) + 4.0 * b * b);
    min_eig = std::min(min_eig, 0.5 * (a + c - disc));
  }
  const double hgrid = 2.0 * M_PI / s.n;
  if (!(min_eig > 0.0)) throw std::runtime_error("modified flow: metric lost positivity");
  if (dt > opts.cfl * hgrid * hgrid * min_eig)
    throw std::invalid_argument("modified flow: CFL violation (dt too large for this grid)");

  const ModifiedFlowRates rates = modified_flow_rates(grid, s, gamma, alpha);
  TorusState out = s;
  for (int idx = 0; idx < nn; ++idx) {
    out.g11.a[idx] += dt * rates.dg11.a[idx];
    out.g12.a[idx] += dt * rates.dg12.a[idx];
    out.g22.a[idx] += dt * rates.dg22.a[idx];
    out.f.a[idx] += dt * rates.df.a[idx];
    for (size_t t = 0; t < s.phi.size(); ++t) out.phi[t].a[idx] += dt * rates.dphi[t].a[idx];
    if (!std::isfinite(out.g11.a[idx]) || !std::isfinite(out.f.a[idx]))
      throw std::runtime_error("modified flow: non-finite state");
  }
  return out;
}

double weighted_volume(const TorusGrid& grid, const TorusState& s) {
  TorusField w(s.n);
  const int nn = s.n * s.n;
  for (int idx = 0; idx < nn; ++idx) {
    const Node nd = node_metric(s, idx);
    w.a[idx] = std::exp(-s.f.a[idx]) * std::sqrt(nd.det);
  }
  return grid.integral(w);
}

FDReport variation_delta_f_torus(const TorusGrid& grid, const TorusState& base,
                                 const TargetMetric& gamma, double alpha, const TorusField& h11,
                                 const TorusField& h12, const TorusField& h22,
                                 const std::vector<TorusField>& vtheta, double eps, double tol) {
  const int nn = base.n * base.n;
  const int nphi = static_cast<int>(base.phi.size());

  auto perturbed = [&](double e) {
    TorusState s = base;
    for (int idx = 0; idx < nn; ++idx) {
      const Node nd = node_metric(base, idx);
      const double h[2][2] = {{h11.a[idx], h12.a[idx]}, {h12.a[idx], h22.a[idx]}};
      double trh = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) trh += nd.ginv[i][j] * h[i][j];
      s.g11.a[idx] += e * h11.a[idx];
      s.g12.a[idx] += e * h12.a[idx];
      s.g22.a[idx] += e * h22.a[idx];
      s.f.a[idx] += e * 0.5 * trh;  // ell = tr_g h / 2 keeps e^{-f} dM fixed
      for (int t = 0; t < nphi; ++t) s.phi[t].a[idx] += e * vtheta[t].a[idx];
    }
    return s;
  };

  const double fp = f_alpha_torus(grid, perturbed(eps), gamma, alpha).total;
  const double fm = f_alpha_torus(grid, perturbed(-eps), gamma, alpha).total;
  const double lhs = (fp - fm) / (2.0 * eps);

  const TorusGeometry geo = torus_geometry(grid, base, gamma);
  double acc = 0.0;
  for (int idx = 0; idx < nn; ++idx) {
    const Node nd = node_metric(base, idx);
    const double half_R = 0.5 * geo.R.a[idx];
    const double S[2][2] = {
        {half_R * nd.g[0][0] + geo.hess_f_11.a[idx] - alpha * geo.pullback_11.a[idx],
         half_R * nd.g[0][1] + geo.hess_f_12.a[idx] - alpha * geo.pullback_12.a[idx]},
        {half_R * nd.g[0][1] + geo.hess_f_12.a[idx] - alpha * geo.pullback_12.a[idx],
         half_R * nd.g[1][1] + geo.hess_f_22.a[idx] - alpha * geo.pullback_22.a[idx]}};
    const double h[2][2] = {{h11.a[idx], h12.a[idx]}, {h12.a[idx], h22.a[idx]}};
    double inner = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l)
            inner += nd.ginv[i][k] * nd.ginv[j][l] * h[k][l] * S[i][j];
    double map_term = 0.0;
    if (nphi > 0) {
      Vec y(nphi);
      for (int t = 0; t < nphi; ++t) y[t] = base.phi[t].a[idx];
      const std::vector<double> gab = gamma.components(y);
      for (int a = 0; a < nphi; ++a)
        for (int b = 0; b < nphi; ++b)
          map_term += gab[a * nphi + b] * (geo.tension[a].a[idx] - geo.advect[a].a[idx]) *
                      vtheta[b].a[idx];
    }
    acc += (-inner + 2.0 * alpha * map_term) * std::exp(-base.f.a[idx]) * geo.sqrt_det.a[idx];
  }
  const double rhs = acc * grid.cell_area();

  FDReport rep = make_report("variation_delta_F_torus", lhs, rhs, tol);
  rep.eps = eps;
  rep.n = base.n;
  return rep;
}

}  // namespace geoflow
