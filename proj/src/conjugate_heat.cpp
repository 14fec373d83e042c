#include "geoflow/conjugate_heat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geoflow {

namespace {

struct Row {
  double lo = 0.0, di = 0.0, hi = 0.0;  // tridiagonal coefficients of L u at a node
};

// Spatial operator L u = A u_xx + B u_x + C u on the reference grid, with the
// boundary conditions folded in via ghost points.
struct Operator {
  std::vector<Row> rows;
};

Operator build_operator(const ConjugateHeatProblem& prob, int n, double t, double ds_sign_bs_a,
                        double ds_sign_bs_b) {
  const double a = prob.inner_radius(t);
  const double b = prob.outer_radius(t);
  const double L = b - a;
  if (!(L > 0.0)) throw std::runtime_error("conjugate heat: degenerate domain");
  const double dxi = 1.0 / (n - 1);
  Operator op;
  op.rows.resize(n);

  for (int i = 0; i < n; ++i) {
    const double xi = i * dxi;
    const double r = a + xi * L;
    const double rs = ds_sign_bs_a + xi * (ds_sign_bs_b - ds_sign_bs_a);  // dr/ds at fixed xi
    const double F = prob.g.factor.value(std::max(r, 1e-14));
    const double C = -prob.potential(std::max(r, 1e-14));

    if (i == 0 && prob.inner_bc == HeatBC::origin) {
      // r = 0 with symmetry: lap u = m F^2 u_rr, u_xi(0) = 0
      const double F0 = prob.g.factor.value(0.0);
      const double A = prob.m * F0 * F0 / (L * L);
      op.rows[i] = {0.0, -2.0 * A / (dxi * dxi) - prob.potential(0.0), 2.0 * A / (dxi * dxi)};
      continue;
    }
    if (i == 0 && prob.inner_bc == HeatBC::dirichlet_zero) {
      op.rows[i] = {0.0, 0.0, 0.0};
      continue;
    }

    const double A = F * F / (L * L);
    const double Fp = prob.g.factor.d1(r);
    const double B =
        (F * F * ((prob.m - 1.0) / r - (prob.m - 2.0) * Fp / F) + rs) / L;

    if (i == 0) {
      // inner boundary of an annulus
      if (prob.inner_bc == HeatBC::robin_mcf) {
        // e0 = +F d_r into the domain: F u_r = H u -> u_xi = L H u / F
        const double H = prob.inner_H(t);
        const double gcoef = L * H / F;
        // ghost u_{-1} = u_1 - 2 dxi gcoef u_0
        op.rows[i] = {0.0,
                      -2.0 * A / (dxi * dxi) - (2.0 * A / dxi) * gcoef + B * gcoef + C,
                      2.0 * A / (dxi * dxi)};
      } else {  // neumann_zero
        op.rows[i] = {0.0, -2.0 * A / (dxi * dxi) + C, 2.0 * A / (dxi * dxi)};
      }
      continue;
    }
    if (i == n - 1) {
      if (prob.outer_bc == HeatBC::dirichlet_zero) {
        op.rows[i] = {0.0, 0.0, 0.0};
      } else if (prob.outer_bc == HeatBC::neumann_zero) {
        op.rows[i] = {2.0 * A / (dxi * dxi), -2.0 * A / (dxi * dxi) + C, 0.0};
      } else {
        // e0 = -F d_r inward: -F u_r = H u -> u_xi(1) = -L H u / F
        const double H = prob.outer_H(t);
        const double gcoef = -L * H / F;
        // ghost u_n = u_{n-2} + 2 dxi gcoef u_{n-1}
        op.rows[i] = {2.0 * A / (dxi * dxi),
                      -2.0 * A / (dxi * dxi) + (2.0 * A / dxi) * gcoef + B * gcoef + C, 0.0};
      }
      continue;
    }
    op.rows[i] = {A / (dxi * dxi) - B / (2.0 * dxi), -2.0 * A / (dxi * dxi) + C,
                  A / (dxi * dxi) + B / (2.0 * dxi)};
  }
  return op;
}

}  // namespace

ConjugateHeatResult conjugate_heat_solve_radial(const ConjugateHeatProblem& prob,
                                                const ConjugateHeatOptions& opts) {
  const int n = opts.n_nodes;
  if (n < 5) throw std::invalid_argument("conjugate heat: need at least 5 nodes");
  const double horizon = prob.t_end - prob.t_begin;
  if (!(horizon > 0.0)) throw std::invalid_argument("conjugate heat: t_begin must precede t_end");
  const long nsteps = std::lround(std::ceil(horizon / opts.ds - 1e-12));
  const double ds = horizon / nsteps;

  auto physical = [&](double t) {
    const double a = prob.inner_radius(t), b = prob.outer_radius(t);
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) r[i] = a + (b - a) * i / (n - 1.0);
    return r;
  };

  ConjugateHeatResult out;
  std::vector<double> u(n);
  {
    const std::vector<double> r = physical(prob.t_end);
    for (int i = 0; i < n; ++i) u[i] = prob.terminal(r[i]);
    out.states.push_back({prob.t_end, r, u});
  }

  const double eps_t = 1e-7 * std::max(1.0, std::abs(horizon));
  auto dr_ds = [&](double t, const std::function<double(double)>& radius) {
    return -(radius(t + eps_t) - radius(t - eps_t)) / (2.0 * eps_t);
  };

  std::vector<double> lo(n), di(n), hi(n), rhs(n);
  for (long step = 0; step < nsteps; ++step) {
    const double s0 = step * ds, s1 = (step + 1) * ds;
    const double t0 = prob.t_end - s0, t1 = prob.t_end - s1;
    const Operator op0 =
        build_operator(prob, n, t0, dr_ds(t0, prob.inner_radius), dr_ds(t0, prob.outer_radius));
    const Operator op1 =
        build_operator(prob, n, t1, dr_ds(t1, prob.inner_radius), dr_ds(t1, prob.outer_radius));

    for (int i = 0; i < n; ++i) {
      const Row& r0 = op0.rows[i];
      const Row& r1 = op1.rows[i];
      const bool dirichlet = (r0.lo == 0.0 && r0.di == 0.0 && r0.hi == 0.0);
      if (dirichlet) {
        lo[i] = 0.0;
        di[i] = 1.0;
        hi[i] = 0.0;
        rhs[i] = 0.0;
        continue;
      }
      lo[i] = -0.5 * ds * r1.lo;
      di[i] = 1.0 - 0.5 * ds * r1.di;
      hi[i] = -0.5 * ds * r1.hi;
      const double um = (i > 0) ? u[i - 1] : 0.0;
      const double up = (i + 1 < n) ? u[i + 1] : 0.0;
      rhs[i] = u[i] + 0.5 * ds * (r0.lo * um + r0.di * u[i] + r0.hi * up);
    }
    solve_tridiag(lo, di, hi, rhs);
    u = rhs;

    bool pos = true;
    for (double v : u)
      if (!(v > -1e-13) || !std::isfinite(v)) pos = false;
    if (!pos && out.positive) {
      out.positive = false;
      out.positivity_loss_step = static_cast<int>(step);
    }

    if ((step + 1) % opts.store_stride == 0 || step + 1 == nsteps)
      out.states.push_back({t1, physical(t1), u});
  }

  std::reverse(out.states.begin(), out.states.end());
  return out;
}

double heat_mass(const ConjugateHeatState& st, const AmbientMetric& g) {
  // int u dM = int u F^{-m} r^{m-1} omega_{m-1} dr, trapezoid on the stored grid
  const int m = g.dim;
  const double omega = (m == 2) ? 2.0 * M_PI : 4.0 * M_PI;  // m in {2,3}
  double acc = 0.0;
  for (size_t i = 0; i + 1 < st.r.size(); ++i) {
    auto w = [&](size_t k) {
      const double r = std::max(st.r[k], 1e-14);
      const double F = g.factor.value(r);
      return st.u[k] * std::pow(F, -m) * std::pow(r, m - 1);
    };
    acc += 0.5 * (w(i) + w(i + 1)) * (st.r[i + 1] - st.r[i]);
  }
  return acc * omega;
}

ConjugateHeatState interpolate_state(const ConjugateHeatResult& res, double t) {
  const auto& st = res.states;
  if (st.empty()) throw std::runtime_error("interpolate_state: empty trajectory");
  if (t <= st.front().t) return st.front();
  if (t >= st.back().t) return st.back();
  size_t hi = 1;
  while (st[hi].t < t) ++hi;
  const ConjugateHeatState& A = st[hi - 1];
  const ConjugateHeatState& B = st[hi];
  const double w = (t - A.t) / (B.t - A.t);
  ConjugateHeatState out;
  out.t = t;
  out.r.resize(A.r.size());
  out.u.resize(A.u.size());
  for (size_t i = 0; i < A.r.size(); ++i) {
    out.r[i] = (1 - w) * A.r[i] + w * B.r[i];
    out.u[i] = (1 - w) * A.u[i] + w * B.u[i];
  }
  return out;
}

}  // namespace geoflow
