#include "geoflow/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "geoflow/functionals.hpp"
#include "geoflow/oracles.hpp"
#include "geoflow/registry.hpp"
#include "geoflow/verify.hpp"

namespace geoflow {

namespace {

struct Runner {
  std::ostream& log;
  std::vector<CriterionResult> results;

  void record(int id, const std::string& name, bool pass, const std::string& detail) {
    results.push_back({id, name, pass, detail});
    log << (pass ? "PASS" : "FAIL") << " criterion " << id << " [" << name << "]: " << detail
        << '\n';
    log.flush();
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

// ---- 1: Gaussian shrinker through the radial integrator ----
void criterion_gaussian_shrinker(Runner& r) {
  const auto t0 = std::chrono::steady_clock::now();
  const RadialProfile one = RadialProfile::constant(1.0);
  SolitonInit init;
  init.f0 = 0.0;
  const SolitonSolution sol =
      integrate_soliton(one, one, SolitonParams::shrinking(0.0), 3, 0.01, 5.0, init,
                        IntegrateOptions{1e-10, 1e-12, 0.0, true, 100000});
  double sup_f = 0.0;
  const double c = sol.f.front() - sol.r.front() * sol.r.front() / 4.0;
  for (size_t i = 0; i < sol.r.size(); ++i)
    sup_f = std::max(sup_f, std::abs(sol.f[i] - (sol.r[i] * sol.r[i] / 4.0 + c)));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = sol.residual_sup < 1e-9 && sup_f < 1e-9 && secs < 1.0;
  r.record(1, "gaussian_shrinker_ode", pass,
           "residual_sup=" + fmt(sol.residual_sup) + " sup|f-r^2/4|=" + fmt(sup_f) +
               " runtime=" + fmt(secs) + "s");
}

// ---- 2: cigar steady soliton ----
void criterion_cigar(Runner& r) {
  const RadialProfile F = make_profile("cigar");
  const RadialProfile G = RadialProfile::constant(1.0);
  const SolitonParams params = SolitonParams::steady();
  auto fexact = [](double rr) { return -std::log(1.0 + rr * rr); };
  auto fp = [](double rr) { return -2.0 * rr / (1.0 + rr * rr); };

  double sup_res = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double rr = 0.01 + (10.0 - 0.01) * i / 2000.0;
    Jet2 fj{fexact(rr), fp(rr), 0.0};
    MapJet2 pj;
    const RadialResidual res = radial_residual(F, G, fj, pj, params, 2, rr);
    sup_res = std::max(sup_res, std::abs(res.e1));
  }

  SolitonInit init;
  init.f0 = fexact(0.01);
  init.fp0 = fp(0.01);
  const SolitonSolution sol = integrate_soliton(F, G, params, 2, 0.01, 10.0, init);
  double sup_track = 0.0;
  for (size_t i = 0; i < sol.r.size(); ++i)
    sup_track = std::max(sup_track, std::abs(sol.f[i] - fexact(sol.r[i])));

  const bool pass = sup_res < 1e-12 && sup_track < 1e-8;
  r.record(2, "cigar_steady_soliton", pass,
           "pointwise_residual=" + fmt(sup_res) + " tracking_error=" + fmt(sup_track));
}

// ---- 3: Huisken constancy on soliton families ----
void criterion_huisken_constancy(Runner& r) {
  // Closed-form target; 4 pi R^2 e^{-R^2/(4(T-t))} [4 pi (T-t)]^{-1} at
  // R^2 = 4(T-t) evaluates to 4/e for m = 3.
  const double phi3 = 4.0 / M_E;
  const double phi2 = std::sqrt(2.0 * M_PI) * std::exp(-0.5);

  double worst_analytic = 0.0;
  for (int i = 0; i <= 40; ++i) {
    const double tau = 1.0 - i * (0.95 / 40.0);  // T - t in [0.05, 1]
    const double R2 = 4.0 * tau;
    const double phi = std::pow(4.0 * M_PI * tau, -1.0) * 4.0 * M_PI * R2 *
                       std::exp(-R2 / (4.0 * tau));
    worst_analytic = std::max(worst_analytic, std::abs(phi - phi3));
  }

  // Discrete pipeline, spheres in the 3d Gaussian background.
  const SelfSimilarBackground bg3 = make_background("gaussian", 3, SolitonClass::shrinking, 0.0);
  std::vector<double> times;
  for (int i = 0; i <= 24; ++i) times.push_back(-1.0 + i * (0.95 / 24.0));
  const SphereFamily fam = construct_soliton_family(bg3, 2.0, times);
  double worst_sphere = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    const Ambient amb = bg3.slice(times[i]);
    const double area = weighted_area_sphere(amb, 3, fam.radii[i]);
    const double phi = huisken_prefactor(SolitonClass::shrinking, 3, 0.0, times[i]) * area;
    worst_sphere = std::max(worst_sphere, std::abs(phi - phi3));
  }

  // Discrete pipeline, polygon circles in the 2d Gaussian background.
  const SelfSimilarBackground bg2 = make_background("gaussian", 2, SolitonClass::shrinking, 0.0);
  const double R0 = std::sqrt(2.0);  // f-minimal at T - t = 1
  const SphereFamily rad2 = construct_soliton_family(bg2, R0, times);
  double worst_circle = 0.0;
  for (size_t i = 0; i < times.size(); ++i) {
    const Ambient amb = bg2.slice(times[i]);
    const PlaneCurve c = PlaneCurve::circle(rad2.radii[i], 512);
    const double phi = huisken_prefactor(SolitonClass::shrinking, 2, 0.0, times[i]) *
                       weighted_area(c, amb);
    worst_circle = std::max(worst_circle, std::abs(phi - phi2));
  }

  const bool pass = worst_analytic < 1e-6 && worst_sphere < 1e-4 && worst_circle < 1e-4;
  r.record(3, "huisken_constancy", pass,
           "analytic_dev=" + fmt(worst_analytic) + " sphere_pipeline_dev=" + fmt(worst_sphere) +
               " circle_pipeline_dev=" + fmt(worst_circle) + " (targets 4/e, sqrt(2pi)/sqrt(e))");
}

// ---- 4: monotonicity and the derivative identity on a perturbed circle ----
void criterion_monotonicity(Runner& r) {
  const SelfSimilarBackground bg = make_background("gaussian", 2, SolitonClass::shrinking, 0.0);
  const PlaneCurve c0 = PlaneCurve::circle(2.5, 512);
  const CurveFamily fam = evolve_curve_mcf(bg, c0, -2.0, -1.6, 1e-5, 500);
  const MonotonicityResult res = check_monotonicity(fam, bg, 1e-3);
  const bool pass = res.monotone && res.worst_rel < 1e-3;
  r.record(4, "monotonicity_identity", pass,
           std::string("monotone=") + (res.monotone ? "yes" : "no") +
               " worst_rel=" + fmt(res.worst_rel) + " snapshots=" + fmt(fam.times.size()));
}

// ---- 5: evolution equations on the euclidean shrinking circle ----
void criterion_evolution_equations(Runner& r) {
  const SelfSimilarBackground bg = make_background("euclidean", 2, SolitonClass::steady, 0.0);
  const CurveFamily fam = evolve_curve_mcf(bg, PlaneCurve::circle(1.0, 512), 0.0, 0.02, 1e-5, 100);
  auto ambient = [&bg](double t) { return bg.slice(t); };
  const size_t k = fam.times.size() / 2;
  const FDReport h_rep = check_H_evolution(fam, ambient, k, 1e-3);
  const FDReport a_rep = check_area_element(fam, ambient, k, 1e-3);
  const FDReport m_rep = check_metric_evolution(fam, ambient, k, 1e-3);

  // observed orders: dt from the scalar circle ODE, h from ellipse curvature
  const Ambient amb = bg.slice(0.0);
  auto radius_err = [&](double dt) {
    double R = 2.0;
    const int nsteps = static_cast<int>(std::lround(0.5 / dt));
    for (int i = 0; i < nsteps; ++i) R = mcf_step_sphere(R, amb, 2, dt);
    return std::abs(R - std::sqrt(4.0 - 2.0 * 0.5));
  };
  const double order_dt = std::log2(radius_err(1e-3) / radius_err(5e-4));

  auto ellipse_err = [&](int n) {
    const PlaneCurve e = PlaneCurve::ellipse(2.0, 1.0, n);
    const CurveGeometry geo = curve_geometry(e, amb);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const double th = 2.0 * M_PI * j / n;
      const double a = 2.0, b = 1.0;
      const double den = std::pow(a * a * std::sin(th) * std::sin(th) +
                                      b * b * std::cos(th) * std::cos(th),
                                  1.5);
      worst = std::max(worst, std::abs(geo.H[j] - a * b / den));
    }
    return worst;
  };
  const double e512 = ellipse_err(512);
  const double order_h = std::log2(ellipse_err(256) / e512);

  const bool pass = h_rep.pass && a_rep.pass && m_rep.pass && order_dt >= 1.0 - 0.15 &&
                    order_h >= 2.0 - 0.2 && e512 < 1e-3;
  r.record(5, "evolution_equations", pass,
           "H_rel=" + fmt(h_rep.rel_err) + " area_rel=" + fmt(a_rep.rel_err) +
               " metric_rel=" + fmt(m_rep.rel_err) + " order_dt=" + fmt(order_dt) +
               " order_h=" + fmt(order_h) + " ellipse_err=" + fmt(e512));
}

// ---- 6: extended Harnack vanishing on the Grim Reaper family ----
void criterion_harnack(Runner& r) {
  const SelfSimilarBackground bg = make_background("grim_reaper_f", 2, SolitonClass::steady, 0.0);
  const PlaneCurve seed = PlaneCurve::grim_reaper(1.4, 2048);
  std::vector<double> times;
  for (int i = -2; i <= 2; ++i) times.push_back(1e-3 * i);
  const CurveFamily fam = reparametrize_to_mcf(construct_soliton_family(bg, seed, times));
  const HarnackReport rep = extended_harnack(fam, bg, 2, 0.8);

  // sign-flipped negative control: f = +y is not the soliton potential
  double control_sup = 0.0;
  {
    Ambient amb = bg.slice(0.0);
    amb.f = ScalarField::linear({0.0, 1.0});
    const SolitonResidual res = soliton_residual(seed, amb);
    const int n = seed.size();
    for (int j = n / 10; j < n - n / 10; ++j)
      control_sup = std::max(control_sup, std::abs(res.values[j]));
  }
  const bool pass = rep.sup < 1e-4 && control_sup > 0.1;
  r.record(6, "extended_harnack", pass,
           "sup|Z_ext|=" + fmt(rep.sup) + " sign_flip_control=" + fmt(control_sup));
}

// ---- 7: variation formula on the flat torus ----
void criterion_variation(Runner& r) {
  const int n = 48;
  const TorusGrid grid(n);
  TorusField w(n), f(n);
  std::vector<TorusField> phi(2, TorusField(n));
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) {
      const double x = grid.node(ix), y = grid.node(iy);
      f.at(ix, iy) = 0.3 * std::sin(x) + 0.2 * std::cos(y) + 0.1 * std::sin(x + y);
      phi[0].at(ix, iy) = 0.2 * std::sin(y);
      phi[1].at(ix, iy) = 0.1 * std::cos(x + y);
    }
  const TorusState base = TorusState::conformal(grid, w, phi, f);
  const TargetMetric gamma = TargetMetric::euclidean(2);

  double worst = 0.0, smallest_rhs = 1e30;
  bool all_pass = true;
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    SplitMix64 rng(seed * 7919);
    TorusField h11(n), h12(n), h22(n);
    std::vector<TorusField> vth(2, TorusField(n));
    const double a1 = rng.uniform(0.1, 0.4), a2 = rng.uniform(0.1, 0.4);
    const double a3 = rng.uniform(-0.4, 0.4), a4 = rng.uniform(0.1, 0.4);
    const double b1 = rng.uniform(-0.5, 0.5), b2 = rng.uniform(-0.5, 0.5);
    const int k1 = 1 + static_cast<int>(rng.next() % 3);
    const int k2 = 1 + static_cast<int>(rng.next() % 3);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double x = grid.node(ix), y = grid.node(iy);
        h11.at(ix, iy) = a1 * std::sin(k1 * y) + a2 * std::sin(x);
        h12.at(ix, iy) = a3 * std::sin(x + k1 * y);
        h22.at(ix, iy) = a4 * std::cos(k2 * y);
        vth[0].at(ix, iy) = b1 * std::sin(k2 * x + y);
        vth[1].at(ix, iy) = b2 * std::cos(k1 * x);
      }
    for (double alpha : {0.0, 1.0}) {
      const FDReport rep =
          variation_delta_f_torus(grid, base, gamma, alpha, h11, h12, h22, vth, 1e-4, 1e-4);
      worst = std::max(worst, rep.rel_err);
      smallest_rhs = std::min(smallest_rhs, std::abs(rep.rhs));
      all_pass = all_pass && rep.pass;
    }
  }
  r.record(7, "variation_formula", all_pass && worst < 1e-4 && smallest_rhs > 1e-3,
           "worst_rel=" + fmt(worst) + " min|rhs|=" + fmt(smallest_rhs) +
               " over 5 seeds x alpha in {0,1}");
}

// ---- 8: functional derivative identity, full pipeline and steady case ----
void criterion_derivative_identity(Runner& r) {
  const DerivativeIdentityResult disk = check_derivative_identity_disk(257, 2.5e-4, 4096, 2.0, 0.0, 1.5, 0.75, 0.01, 1e-2);
  const DerivativeIdentitySteadyResult steady = check_derivative_identity_steady_translating(2048, 1e-4);
  const bool pass = disk.report.pass && steady.pass;
  r.record(8, "functional_derivative_identity", pass,
           "disk_rel=" + fmt(disk.report.rel_err) + " (lhs=" + fmt(disk.lhs) + ", rhs=" +
               fmt(disk.rhs_bulk + disk.rhs_boundary) + ") steady |lhs|=" +
               fmt(std::abs(steady.lhs)) + " |rhs|=" + fmt(std::abs(steady.rhs)));
}

// ---- 9: conjugate heat solver ----
void criterion_conjugate_heat(Runner& r) {
  // Backward heat kernel in flat 3-space on [0, 8], solved from T - t = 0.1
  // back to T - t = 1 at grid spacing 1/64.
  auto kernel = [](double rr, double tau) {
    return std::pow(4.0 * M_PI * tau, -1.5) * std::exp(-rr * rr / (4.0 * tau));
  };
  ConjugateHeatProblem prob;
  prob.m = 3;
  prob.g = AmbientMetric::euclidean(3);
  prob.potential = [](double) { return 0.0; };
  prob.inner_radius = [](double) { return 0.0; };
  prob.outer_radius = [](double) { return 8.0; };
  prob.outer_H = [](double) { return 0.0; };
  prob.inner_H = [](double) { return 0.0; };
  prob.inner_bc = HeatBC::origin;
  prob.outer_bc = HeatBC::dirichlet_zero;
  prob.t_begin = 0.0;  // T - t = 1
  prob.t_end = 0.9;    // T - t = 0.1
  prob.terminal = [&](double rr) { return kernel(rr, 0.1); };
  ConjugateHeatOptions opts;
  opts.n_nodes = 513;  // h = 1/64 on [0, 8]
  opts.ds = 2.5e-4;
  opts.store_stride = 300;
  const ConjugateHeatResult res = conjugate_heat_solve_radial(prob, opts);
  double linf = 0.0;
  for (const ConjugateHeatState& st : res.states) {
    const double tau = 1.0 - st.t;
    for (size_t i = 0; i < st.r.size(); ++i)
      linf = std::max(linf, std::abs(st.u[i] - kernel(st.r[i], tau)));
  }

  // Constant-potential reduction: u spatially constant, c = R - alpha
  // |grad phi|^2 = 1, solved on the conjugate equation gives
  // u(t) = u(b) exp(-c (b - t)).
  ConjugateHeatProblem ode = prob;
  ode.potential = [](double) { return 1.0; };
  ode.outer_bc = HeatBC::neumann_zero;
  ode.t_begin = 0.0;
  ode.t_end = 0.5;
  ode.terminal = [](double) { return 1.0; };
  ConjugateHeatOptions oo;
  oo.n_nodes = 9;
  oo.ds = 1e-5;
  oo.store_stride = 50000;
  const ConjugateHeatResult ores = conjugate_heat_solve_radial(ode, oo);
  double ode_err = 0.0;
  for (const ConjugateHeatState& st : ores.states) {
    const double expect = std::exp(-1.0 * (0.5 - st.t));
    for (double v : st.u) ode_err = std::max(ode_err, std::abs(v - expect));
  }
  const bool pass = linf < 1e-4 && ode_err < 1e-10 && res.positive;
  r.record(9, "conjugate_heat_solver", pass,
           "kernel_Linf=" + fmt(linf) + " ode_reduction_err=" + fmt(ode_err));
}

// ---- 10: geometry kernels ----
void criterion_geometry_kernels(Runner& r) {
  double bianchi = 0.0, ricci_dev = 0.0;
  {
    const AmbientMetric cig{2, make_profile("cigar")};
    for (const Vec& x : {Vec{0.7, 0.4}, Vec{1.3, -0.5}}) {
      bianchi = std::max(bianchi, oracles::contracted_bianchi_residual(cig, x));
      const SymTensor a = ricci(cig, x);
      const SymTensor b = oracles::ricci_from_riemann_fd(cig, x);
      for (int i = 0; i < 4; ++i) ricci_dev = std::max(ricci_dev, std::abs(a.a[i] - b.a[i]));
    }
    const AmbientMetric rs{3, make_profile("round_sphere_chart")};
    for (const Vec& x : {Vec{0.3, 0.2, 0.1}, Vec{0.5, -0.3, 0.4}}) {
      bianchi = std::max(bianchi, oracles::contracted_bianchi_residual(rs, x));
      const SymTensor a = ricci(rs, x);
      const SymTensor b = oracles::ricci_from_riemann_fd(rs, x);
      for (int i = 0; i < 9; ++i) ricci_dev = std::max(ricci_dev, std::abs(a.a[i] - b.a[i]));
    }
  }
  const Ambient amb = make_static_ambient("gaussian", 3);
  const double root = find_f_minimal_sphere(amb, 3, 1.0, 3.0);
  const double root_err = std::abs(root - 2.0);
  const bool pass = bianchi < 1e-8 && ricci_dev < 1e-8 && root_err < 1e-8;
  r.record(10, "geometry_kernels", pass,
           "bianchi=" + fmt(bianchi) + " ricci_vs_fd=" + fmt(ricci_dev) +
               " f_minimal_root_err=" + fmt(root_err));
}

// ---- 11: soliton family construction and reparametrization ----
void criterion_family_construction(Runner& r) {
  const SelfSimilarBackground bg3 = make_background("gaussian", 3, SolitonClass::shrinking, 0.0);
  std::vector<double> times;
  for (int i = 0; i <= 30; ++i) times.push_back(-1.0 + i * (0.9375 / 30.0));  // T-t down to 1/16
  const SphereFamily fam = construct_soliton_family(bg3, 2.0, times);
  double track = 0.0;
  for (size_t i = 0; i < times.size(); ++i)
    track = std::max(track, std::abs(fam.radii[i] - 2.0 * std::sqrt(-times[i])));

  const SelfSimilarBackground gr = make_background("grim_reaper_f", 2, SolitonClass::steady, 0.0);
  const PlaneCurve seed = PlaneCurve::grim_reaper(1.4, 1024);
  std::vector<double> gtimes;
  for (int i = -2; i <= 2; ++i) gtimes.push_back(2e-3 * i);
  const CurveFamily gfam = construct_soliton_family(gr, seed, gtimes);
  const CurveFamily rfam = reparametrize_to_mcf(gfam);
  double haus = 0.0;
  for (size_t k = 0; k < gtimes.size(); ++k)
    haus = std::max(haus, hausdorff_distance(gfam.curves[k], rfam.curves[k]));
  const double hbar = seed.mean_spacing();

  const bool pass = track < 1e-6 && haus < 2.0 * hbar;
  r.record(11, "soliton_family_construction", pass,
           "radius_track_err=" + fmt(track) + " hausdorff=" + fmt(haus) + " (2h=" +
               fmt(2.0 * hbar) + ")");
}

}  // namespace

bool run_acceptance(std::ostream& log, std::vector<CriterionResult>* results) {
  Runner r{log, {}};
  criterion_gaussian_shrinker(r);
  criterion_cigar(r);
  criterion_huisken_constancy(r);
  criterion_monotonicity(r);
  criterion_evolution_equations(r);
  criterion_harnack(r);
  criterion_variation(r);
  criterion_derivative_identity(r);
  criterion_conjugate_heat(r);
  criterion_geometry_kernels(r);
  criterion_family_construction(r);

  bool all = true;
  for (const CriterionResult& c : r.results) all = all && c.pass;
  log << (all ? "ACCEPTANCE: all criteria passed\n" : "ACCEPTANCE: failures present\n");
  if (results) *results = r.results;
  return all;
}

}  // namespace geoflow
