#include "geoflow/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "geoflow/acceptance.hpp"
#include "geoflow/functionals.hpp"
#include "geoflow/registry.hpp"
#include "geoflow/verify.hpp"

namespace geoflow {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& v, const std::string& key, int line) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                      "' expects a number, got '" + v + "'");
  }
}

int to_int(const std::string& v, const std::string& key, int line) {
  const double d = to_double(v, key, line);
  if (d != std::floor(d))
    throw ConfigError("line " + std::to_string(line) + ": field '" + key +
                      "' expects an integer");
  return static_cast<int>(d);
}

}  // namespace

ScenarioConfig ScenarioConfig::parse_text(const std::string& text, const std::string& origin) {
  ScenarioConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  bool have_kind = false;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + " line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + stripped + "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string val = trim(stripped.substr(eq + 1));
    if (key == "scenario") {
      cfg.kind = val;
      have_kind = true;
    } else if (key == "background.profile") {
      cfg.profile = val;
    } else if (key == "background.class") {
      cfg.soliton_class = val;
    } else if (key == "background.T") {
      cfg.T = to_double(val, key, lineno);
    } else if (key == "background.alpha") {
      cfg.alpha = to_double(val, key, lineno);
    } else if (key == "background.dim") {
      cfg.dim = to_int(val, key, lineno);
    } else if (key == "surface.kind") {
      cfg.surface_kind = val;
    } else if (key == "surface.radius") {
      cfg.radius = to_double(val, key, lineno);
    } else if (key == "surface.half_width") {
      cfg.half_width = to_double(val, key, lineno);
    } else if (key == "surface.n") {
      cfg.n = to_int(val, key, lineno);
    } else if (key == "numerics.dt") {
      cfg.dt = to_double(val, key, lineno);
    } else if (key == "numerics.t_begin") {
      cfg.t_begin = to_double(val, key, lineno);
    } else if (key == "numerics.t_end") {
      cfg.t_end = to_double(val, key, lineno);
    } else if (key == "numerics.snapshot_stride") {
      cfg.snapshot_stride = to_int(val, key, lineno);
    } else if (key == "numerics.eps") {
      cfg.eps = to_double(val, key, lineno);
    } else if (key == "numerics.tol") {
      cfg.tol = to_double(val, key, lineno);
    } else if (key == "numerics.r0") {
      cfg.r0 = to_double(val, key, lineno);
    } else if (key == "numerics.r1") {
      cfg.r1 = to_double(val, key, lineno);
    } else if (key == "seed") {
      cfg.seed = static_cast<uint64_t>(to_double(val, key, lineno));
    } else if (key == "output.dir") {
      cfg.out_dir = val;
    } else {
      throw ConfigError(origin + " line " + std::to_string(lineno) + ": unknown field '" + key +
                        "'");
    }
  }
  if (!have_kind) throw ConfigError(origin + ": missing required field 'scenario'");
  if (cfg.n <= 0 || cfg.dt <= 0.0 || cfg.tol <= 0.0 || cfg.eps <= 0.0)
    throw ConfigError(origin + ": numeric knobs must be positive");
  bool known_profile = false;
  for (const std::string& name : profile_names()) known_profile |= (name == cfg.profile);
  if (!known_profile) throw ConfigError(origin + ": unknown background.profile '" + cfg.profile +
                                        "'");
  try {
    soliton_class_from_string(cfg.soliton_class);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(origin + ": " + e.what());
  }
  return cfg;
}

ScenarioConfig ScenarioConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

std::string resolve_out_dir(const std::string& dir) {
  const char* root = std::getenv("GEOFLOW_OUT");
  std::filesystem::path p(dir);
  if (root && *root && p.is_relative()) p = std::filesystem::path(root) / p;
  std::filesystem::create_directories(p);
  return p.string();
}

namespace {

SolitonClass parse_class(const std::string& s) { return soliton_class_from_string(s); }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void write_curve_snapshots(const std::string& path, const CurveFamily& fam,
                           const SelfSimilarBackground& bg) {
  std::ofstream out(path);
  out << "t,vertex_index,x,y,H,residual\n";
  out << std::setprecision(17);
  for (size_t k = 0; k < fam.times.size(); ++k) {
    const Ambient amb = bg.slice(fam.times[k]);
    const CurveGeometry geo = curve_geometry(fam.curves[k], amb);
    for (int j = 0; j < fam.curves[k].size(); ++j)
      out << fam.times[k] << ',' << j << ',' << fam.curves[k].x(j) << ',' << fam.curves[k].y(j)
          << ',' << geo.H[j] << ',' << geo.H[j] + geo.e0f[j] << '\n';
  }
}

void write_family_manifest(const std::string& path, const std::string& snapshots,
                           const ScenarioConfig& cfg, const std::string& construction) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"snapshots\": \"" << snapshots << "\",\n";
  os << "  \"class\": \"" << cfg.soliton_class << "\",\n";
  os << "  \"profile\": \"" << cfg.profile << "\",\n";
  os << "  \"construction\": \"" << construction << "\",\n";
  os << "  \"n\": " << cfg.n << ",\n";
  os << "  \"dt\": " << cfg.dt << ",\n";
  os << "  \"tol\": " << cfg.tol << ",\n";
  os << "  \"seed\": " << cfg.seed << "\n";
  os << "}\n";
  write_file(path, os.str());
}

void write_phi_plot_script(const std::string& dir) {
  std::ostringstream os;
  os << "set datafile separator ','\n";
  os << "set key left bottom\n";
  os << "set xlabel 't'\n";
  os << "set ylabel 'Phi'\n";
  os << "set term pngcairo size 900,600\n";
  os << "set output 'phi_series.png'\n";
  os << "plot 'phi_series.csv' using 1:3 with linespoints title 'Phi(t)'\n";
  write_file(dir + "/plot_phi.gp", os.str());
}

int run_soliton_solve(const ScenarioConfig& cfg, const std::string& dir) {
  const RadialProfile F = make_profile(cfg.profile);
  const RadialProfile G = RadialProfile::constant(1.0);
  SolitonParams params;
  const SolitonClass cls = parse_class(cfg.soliton_class);
  switch (cls) {
    case SolitonClass::steady: params = SolitonParams::steady(cfg.alpha); break;
    case SolitonClass::shrinking: params = SolitonParams::shrinking(cfg.T, cfg.alpha); break;
    case SolitonClass::expanding: params = SolitonParams::expanding(cfg.T, cfg.alpha); break;
  }
  SolitonInit init;
  IntegrateOptions opts;
  opts.regular_origin = true;
  const SolitonSolution sol =
      integrate_soliton(F, G, params, cfg.dim, cfg.r0, cfg.r1, init, opts);
  std::ofstream out(dir + "/soliton_solution.txt");
  sol.write(out);
  std::ostringstream sum;
  sum << "residual_sup = " << std::setprecision(17) << sol.residual_sup << "\n"
      << "nodes = " << sol.r.size() << "\n";
  write_file(dir + "/summary.txt", sum.str());
  std::cout << "soliton-solve: residual_sup = " << sol.residual_sup << "\n";
  return sol.residual_sup < cfg.tol ? 0 : 1;
}

int run_background_build(const ScenarioConfig& cfg, const std::string& dir) {
  const SelfSimilarBackground bg =
      make_background(cfg.profile, cfg.dim, parse_class(cfg.soliton_class), cfg.T, cfg.alpha);
  std::ofstream out(dir + "/background_snapshots.txt");
  out << "# t r f fp Fbar\n" << std::setprecision(17);
  const int nt = 9, nr = 33;
  for (int i = 0; i < nt; ++i) {
    const double t = cfg.t_begin + (cfg.t_end - cfg.t_begin) * i / (nt - 1.0);
    const Ambient amb = bg.slice(t);
    for (int j = 1; j <= nr; ++j) {
      const double r = cfg.r1 * j / nr;
      Vec x(cfg.dim, 0.0);
      x[0] = r;
      out << t << ' ' << r << ' ' << amb.f.value(x) << ' ' << amb.f.grad(x)[0] << ' '
          << amb.g.factor.value(r) << '\n';
    }
  }
  const FDReport rep = check_potential_evolution(bg, 0.5 * (cfg.t_begin + cfg.t_end),
                                                 Vec{1.0, 0.0}, 1e-5, cfg.tol);
  std::cout << "background-build: potential evolution rel_err = " << rep.rel_err << "\n";
  return rep.pass ? 0 : 1;
}

void check_cfl_or_throw(const ScenarioConfig& cfg, const PlaneCurve& c,
                        const SelfSimilarBackground& bg) {
  const Ambient amb = bg.slice(cfg.t_begin);
  double maxF = 0.0;
  for (int j = 0; j < c.size(); ++j)
    maxF = std::max(maxF, amb.g.factor.value(std::hypot(c.x(j), c.y(j))));
  double min_sp = c.mean_spacing();
  for (int j = 0; j < (c.closed() ? c.size() : c.size() - 1); ++j) {
    const int k = (j + 1) % c.size();
    min_sp = std::min(min_sp, std::hypot(c.x(k) - c.x(j), c.y(k) - c.y(j)));
  }
  if (cfg.dt > 0.4 * min_sp * min_sp / maxF)
    throw ConfigError("numerics.dt violates the CFL bound " +
                      std::to_string(0.4 * min_sp * min_sp / maxF) + " for this surface");
}

int run_mcf(const ScenarioConfig& cfg, const std::string& dir) {
  const SelfSimilarBackground bg =
      make_background(cfg.profile, cfg.dim, parse_class(cfg.soliton_class), cfg.T, cfg.alpha);
  if (cfg.surface_kind == "sphere") {
    const SphereFamily fam =
        evolve_sphere_mcf(bg, cfg.radius, cfg.t_begin, cfg.t_end, cfg.dt, cfg.snapshot_stride);
    std::ofstream out(dir + "/sphere_family.csv");
    out << "t,R,H,residual\n" << std::setprecision(17);
    for (size_t k = 0; k < fam.times.size(); ++k) {
      const Ambient amb = bg.slice(fam.times[k]);
      const SphereGeometry geo = sphere_geometry(amb, SphereSurface{fam.radii[k]});
      out << fam.times[k] << ',' << fam.radii[k] << ',' << geo.H << ',' << geo.H + geo.e0f
          << '\n';
    }
    write_family_manifest(dir + "/family.json", "sphere_family.csv", cfg, fam.construction);
    return 0;
  }
  const PlaneCurve c0 = (cfg.surface_kind == "grim_reaper")
                            ? PlaneCurve::grim_reaper(cfg.half_width, cfg.n)
                            : PlaneCurve::circle(cfg.radius, cfg.n);
  check_cfl_or_throw(cfg, c0, bg);
  const CurveFamily fam =
      evolve_curve_mcf(bg, c0, cfg.t_begin, cfg.t_end, cfg.dt, cfg.snapshot_stride);
  write_curve_snapshots(dir + "/curve_snapshots.csv", fam, bg);
  write_family_manifest(dir + "/family.json", "curve_snapshots.csv", cfg, fam.construction);
  return 0;
}

int run_monotonicity(const ScenarioConfig& cfg, const std::string& dir) {
  const SelfSimilarBackground bg =
      make_background(cfg.profile, 2, parse_class(cfg.soliton_class), cfg.T, cfg.alpha);
  const PlaneCurve c0 = PlaneCurve::circle(cfg.radius, cfg.n);
  check_cfl_or_throw(cfg, c0, bg);
  const CurveFamily fam =
      evolve_curve_mcf(bg, c0, cfg.t_begin, cfg.t_end, cfg.dt, cfg.snapshot_stride);
  const MonotonicityResult res = check_monotonicity(fam, bg, cfg.tol);

  std::ofstream out(dir + "/phi_series.csv");
  out << "t,area_f,phi,residual_integral\n" << std::setprecision(17);
  for (size_t i = 0; i < res.series.times.size(); ++i)
    out << res.series.times[i] << ',' << res.series.area_f[i] << ',' << res.series.phi[i] << ','
        << res.series.residual_l2[i] << '\n';
  std::ofstream rep(dir + "/reports.csv");
  write_reports_csv(rep, res.derivative_identity);
  write_phi_plot_script(dir);
  write_summary(std::cout, res.derivative_identity);
  std::cout << "monotone: " << (res.monotone ? "yes" : "no") << "\n";
  return (res.monotone && res.worst_rel < cfg.tol) ? 0 : 1;
}

int run_harnack(const ScenarioConfig& cfg, const std::string& dir) {
  const SelfSimilarBackground bg =
      make_background("grim_reaper_f", 2, SolitonClass::steady, 0.0, cfg.alpha);
  const PlaneCurve seed = PlaneCurve::grim_reaper(cfg.half_width, cfg.n);
  std::vector<double> times;
  for (int i = -2; i <= 2; ++i) times.push_back(cfg.dt * i);
  const CurveFamily fam = reparametrize_to_mcf(construct_soliton_family(bg, seed, times));
  const HarnackReport rep = extended_harnack(fam, bg, 2, 0.8);
  std::ofstream out(dir + "/harnack.csv");
  out << "vertex,dH_dt,two_V_gradH,A_VV,two_R0i_gradf,neg_half_grad0R,neg_HR00,alpha_A_phi,"
         "total\n"
      << std::setprecision(17);
  for (size_t i = 0; i < rep.indices.size(); ++i)
    out << rep.indices[i] << ',' << rep.dH_dt[i] << ',' << rep.term_VgradH[i] << ','
        << rep.term_AVV[i] << ',' << rep.term_R0i[i] << ',' << rep.term_gradR[i] << ','
        << rep.term_HR00[i] << ',' << rep.term_alphaA[i] << ',' << rep.total[i] << '\n';
  std::cout << "harnack: sup = " << rep.sup << " l2 = " << rep.l2 << "\n";
  return rep.sup < cfg.tol ? 0 : 1;
}

int run_variation(const ScenarioConfig& cfg, const std::string& dir) {
  const int n = std::max(16, cfg.n);
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
  SplitMix64 rng(cfg.seed);
  std::vector<FDReport> reports;
  for (int s = 0; s < 5; ++s) {
    TorusField h11(n), h12(n), h22(n);
    std::vector<TorusField> vth(2, TorusField(n));
    const double a1 = rng.uniform(0.1, 0.4), a2 = rng.uniform(0.1, 0.4);
    const double a3 = rng.uniform(-0.4, 0.4), b1 = rng.uniform(-0.5, 0.5);
    const double b2 = rng.uniform(-0.5, 0.5);
    const int k1 = 1 + static_cast<int>(rng.next() % 3);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double x = grid.node(ix), y = grid.node(iy);
        h11.at(ix, iy) = a1 * std::sin(k1 * y) + a2 * std::sin(x);
        h12.at(ix, iy) = a3 * std::sin(x + k1 * y);
        h22.at(ix, iy) = a2 * std::cos(y);
        vth[0].at(ix, iy) = b1 * std::sin(x + y);
        vth[1].at(ix, iy) = b2 * std::cos(k1 * x);
      }
    reports.push_back(
        variation_delta_f_torus(grid, base, gamma, cfg.alpha, h11, h12, h22, vth, cfg.eps,
                                cfg.tol));
  }
  std::ofstream out(dir + "/reports.csv");
  write_reports_csv(out, reports);
  std::ofstream meta(dir + "/metadata.txt");
  meta << "seed=" << cfg.seed << "\n";
  meta << "grid_n=" << n << "\n";
  meta << "eps=" << cfg.eps << "\n";
  write_summary(std::cout, reports);
  for (const FDReport& rep : reports)
    if (!rep.pass) return 1;
  return 0;
}

int run_derivative_identity(const ScenarioConfig& cfg, const std::string& dir) {
  const double t_eval = 0.5 * (cfg.t_begin + cfg.t_end);
  const DerivativeIdentityResult res =
      check_derivative_identity_disk(257, 2.5e-4, 4096, cfg.radius, cfg.t_begin, cfg.t_end, t_eval, 0.01,
                      cfg.tol);
  std::vector<FDReport> reports = {res.report};
  std::ofstream out(dir + "/reports.csv");
  write_reports_csv(out, reports);

  // conjugate-heat weight trajectory and the functional breakdown at t_eval
  {
    auto radius = [&](double t) { return std::sqrt(cfg.radius * cfg.radius - 2.0 * t); };
    ConjugateHeatProblem prob;
    prob.m = 2;
    prob.g = AmbientMetric::euclidean(2);
    prob.potential = [](double) { return 0.0; };
    prob.inner_radius = [](double) { return 0.0; };
    prob.outer_radius = radius;
    prob.outer_H = [radius](double t) { return 1.0 / radius(t); };
    prob.inner_H = [](double) { return 0.0; };
    prob.outer_bc = HeatBC::robin_mcf;
    prob.t_begin = cfg.t_begin;
    prob.t_end = cfg.t_end;
    prob.terminal = [](double r) { return std::exp(-0.25 * r * r); };
    ConjugateHeatOptions opts;
    opts.n_nodes = 129;
    opts.ds = 1e-3;
    opts.store_stride = 150;
    const ConjugateHeatResult heat = conjugate_heat_solve_radial(prob, opts);
    std::ofstream tr(dir + "/heat_trajectory.csv");
    tr << "t,r,u\n" << std::setprecision(17);
    for (const ConjugateHeatState& st : heat.states)
      for (size_t i = 0; i < st.r.size(); ++i)
        tr << st.t << ',' << st.r[i] << ',' << st.u[i] << '\n';

    const ConjugateHeatState st = interpolate_state(heat, t_eval);
    std::vector<double> fv(st.u.size());
    for (size_t i = 0; i < st.u.size(); ++i) fv[i] = -std::log(std::max(st.u[i], 1e-300));
    Ambient amb;
    amb.g = AmbientMetric::euclidean(2);
    amb.gamma = TargetMetric::euclidean(1);
    amb.phi = MapField::constant(Vec{0.0}, 2);
    amb.f = ScalarField::radial(RadialProfile::from_samples(st.r, fv));
    const FunctionalBreakdown fb = f_alpha_radial(amb, 2, 0.0, radius(t_eval), 2048);
    std::ofstream bd(dir + "/functional_breakdown.txt");
    bd << std::setprecision(17);
    bd << "bulk=" << fb.bulk << "\n";
    bd << "boundary=" << fb.boundary << "\n";
    bd << "total=" << fb.total << "\n";
  }
  write_summary(std::cout, reports);
  return res.report.pass ? 0 : 1;
}

int run_full_suite(const ScenarioConfig& cfg, const std::string& dir) {
  std::ofstream out(dir + "/acceptance.txt");
  std::ostringstream buf;
  const bool ok = run_acceptance(buf);
  out << buf.str();
  std::cout << buf.str();
  (void)cfg;
  return ok ? 0 : 1;
}

}  // namespace

namespace {

void validate_time_window(const ScenarioConfig& cfg) {
  if (cfg.kind != "mcf-run" && cfg.kind != "monotonicity" && cfg.kind != "background-build")
    return;
  const SolitonClass cls = soliton_class_from_string(cfg.soliton_class);
  if (cls == SolitonClass::shrinking && !(cfg.t_begin < cfg.T && cfg.t_end < cfg.T))
    throw ConfigError("shrinking class requires t_begin, t_end < background.T");
  if (cls == SolitonClass::expanding && !(cfg.t_begin > cfg.T && cfg.t_end > cfg.T))
    throw ConfigError("expanding class requires t_begin, t_end > background.T");
}

}  // namespace

int run_scenario(const ScenarioConfig& cfg) {
  const std::string dir = resolve_out_dir(cfg.out_dir);
  try {
    validate_time_window(cfg);
    if (cfg.kind == "soliton-solve") return run_soliton_solve(cfg, dir);
    if (cfg.kind == "background-build") return run_background_build(cfg, dir);
    if (cfg.kind == "mcf-run") return run_mcf(cfg, dir);
    if (cfg.kind == "monotonicity") return run_monotonicity(cfg, dir);
    if (cfg.kind == "harnack") return run_harnack(cfg, dir);
    if (cfg.kind == "variation") return run_variation(cfg, dir);
    if (cfg.kind == "thm1") return run_derivative_identity(cfg, dir);
    if (cfg.kind == "full-suite") return run_full_suite(cfg, dir);
    throw ConfigError("unknown scenario kind: " + cfg.kind);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "scenario failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace geoflow
