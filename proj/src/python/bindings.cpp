#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "geoflow/acceptance.hpp"
#include "geoflow/functionals.hpp"
#include "geoflow/oracles.hpp"
#include "geoflow/registry.hpp"
#include "geoflow/scenario.hpp"
#include "geoflow/verify.hpp"

namespace py = pybind11;
using namespace geoflow;

namespace {

MapField make_radial_map(const RadialProfile& p, const Vec& dir, int m) {
  return MapField::radial(p, dir, m);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical laboratory for mean curvature flow in coupled Ricci / harmonic "
            "map heat flow backgrounds";

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_static("constant", &RadialProfile::constant)
      .def_static("from_samples", &RadialProfile::from_samples)
      .def("value", &RadialProfile::value)
      .def("d1", &RadialProfile::d1)
      .def("d2", &RadialProfile::d2);
  m.def("make_profile", &make_profile, py::arg("name"));
  m.def("profile_names", &profile_names);

  py::class_<AmbientMetric>(m, "AmbientMetric")
      .def_static("euclidean", &AmbientMetric::euclidean)
      .def(py::init([](int dim, const RadialProfile& p) {
             return AmbientMetric{dim, p};
           }),
           py::arg("dim"), py::arg("factor"))
      .def_readonly("dim", &AmbientMetric::dim);

  py::class_<TargetMetric>(m, "TargetMetric").def_static("euclidean", &TargetMetric::euclidean);

  py::class_<ScalarField>(m, "ScalarField")
      .def_static("constant", &ScalarField::constant)
      .def_static("radial", &ScalarField::radial)
      .def_static("linear", &ScalarField::linear, py::arg("coeffs"), py::arg("offset") = 0.0)
      .def("value", [](const ScalarField& f, const Vec& x) { return f.value(x); });

  py::class_<MapField>(m, "MapField")
      .def_static("constant", &MapField::constant)
      .def_static("radial", &make_radial_map);

  py::class_<SymTensor>(m, "SymTensor")
      .def_readonly("dim", &SymTensor::dim)
      .def_readonly("tag", &SymTensor::tag)
      .def("__getitem__",
           [](const SymTensor& t, std::pair<int, int> ij) { return t(ij.first, ij.second); })
      .def("flat", [](const SymTensor& t) { return t.a; });

  py::class_<Rank3>(m, "Rank3").def("__getitem__", [](const Rank3& g, std::tuple<int, int, int> kij) {
    return g(std::get<0>(kij), std::get<1>(kij), std::get<2>(kij));
  });

  m.def("christoffel", &christoffel);
  m.def("ricci", &ricci);
  m.def("scalar_curvature", &scalar_curvature);
  m.def("gauss_curvature_2d", &gauss_curvature_2d);
  m.def("hessian", &hessian);
  m.def("grad_laplacian", [](const AmbientMetric& g, const ScalarField& h, const Vec& x) {
    const GradLap gl = grad_laplacian(g, h, x);
    return py::make_tuple(gl.grad, gl.lap, gl.grad_norm2);
  });
  m.def("tension_field", &tension_field);
  m.def("phi_pullback", [](const MapField& phi, const AmbientMetric& g, const TargetMetric& gam,
                           const Vec& x) {
    const Pullback pb = phi_pullback(phi, g, gam, x);
    return py::make_tuple(pb.tensor, pb.trace);
  });

  py::enum_<SolitonClass>(m, "SolitonClass")
      .value("steady", SolitonClass::steady)
      .value("shrinking", SolitonClass::shrinking)
      .value("expanding", SolitonClass::expanding);

  py::class_<SolitonParams>(m, "SolitonParams")
      .def_static("steady", &SolitonParams::steady, py::arg("alpha") = 0.0)
      .def_static("shrinking", &SolitonParams::shrinking, py::arg("T"), py::arg("alpha") = 0.0)
      .def_static("expanding", &SolitonParams::expanding, py::arg("T"), py::arg("alpha") = 0.0)
      .def_readonly("alpha", &SolitonParams::alpha)
      .def_readonly("lambda_", &SolitonParams::lambda);

  py::class_<SolitonSolution>(m, "SolitonSolution")
      .def_readonly("r", &SolitonSolution::r)
      .def_readonly("f", &SolitonSolution::f)
      .def_readonly("fp", &SolitonSolution::fp)
      .def_readonly("residual_sup", &SolitonSolution::residual_sup)
      .def("write", [](const SolitonSolution& s) {
        std::ostringstream os;
        s.write(os);
        return os.str();
      });

  m.def(
      "radial_residual",
      [](const RadialProfile& F, const RadialProfile& G, double f, double fp, double fpp,
         const Vec& phi, const Vec& phip, const Vec& phipp, const SolitonParams& params, int mdim,
         double r) {
        Jet2 fj{f, fp, fpp};
        MapJet2 pj{phi, phip, phipp};
        const RadialResidual res = radial_residual(F, G, fj, pj, params, mdim, r);
        return py::make_tuple(res.e1, res.e2);
      },
      py::arg("F"), py::arg("G"), py::arg("f"), py::arg("fp"), py::arg("fpp"), py::arg("phi"),
      py::arg("phip"), py::arg("phipp"), py::arg("params"), py::arg("m"), py::arg("r"));

  m.def(
      "integrate_soliton",
      [](const RadialProfile& F, const RadialProfile& G, const SolitonParams& params, int mdim,
         double r0, double r1, double f0, double fp0, const Vec& phi0, const Vec& phip0,
         bool regular_origin) {
        SolitonInit init{f0, fp0, phi0, phip0};
        IntegrateOptions opts;
        opts.regular_origin = regular_origin;
        return integrate_soliton(F, G, params, mdim, r0, r1, init, opts);
      },
      py::arg("F"), py::arg("G"), py::arg("params"), py::arg("m"), py::arg("r0"), py::arg("r1"),
      py::arg("f0") = 0.0, py::arg("fp0") = 0.0, py::arg("phi0") = Vec{},
      py::arg("phip0") = Vec{}, py::arg("regular_origin") = false);

  py::class_<Ambient>(m, "Ambient")
      .def_readonly("alpha", &Ambient::alpha)
      .def_property_readonly("metric", [](const Ambient& a) { return a.g; })
      .def("f_value", [](const Ambient& a, const Vec& x) { return a.f.value(x); });
  m.def("make_static_ambient", &make_static_ambient);

  py::class_<SelfSimilarBackground>(m, "SelfSimilarBackground")
      .def("identity_time", &SelfSimilarBackground::identity_time)
      .def("sigma", &SelfSimilarBackground::sigma)
      .def("diffeo", &SelfSimilarBackground::diffeo)
      .def("diffeo_inverse", &SelfSimilarBackground::diffeo_inverse)
      .def("fbar", &SelfSimilarBackground::fbar)
      .def("slice", &SelfSimilarBackground::slice)
      .def("eval", [](const SelfSimilarBackground& bg, const Vec& x, double t) {
        const auto res = bg.eval(x, t);
        return py::make_tuple(res.metric_factor, res.phibar, res.fbar);
      });
  m.def("make_background", &make_background, py::arg("name"), py::arg("m"), py::arg("cls"),
        py::arg("T"), py::arg("alpha") = 0.0);

  py::class_<FDReport>(m, "FDReport")
      .def_readonly("name", &FDReport::name)
      .def_readonly("lhs", &FDReport::lhs)
      .def_readonly("rhs", &FDReport::rhs)
      .def_readonly("abs_err", &FDReport::abs_err)
      .def_readonly("rel_err", &FDReport::rel_err)
      .def_readonly("pass_", &FDReport::pass);
  m.def("check_potential_evolution", &check_potential_evolution, py::arg("bg"), py::arg("t"),
        py::arg("x"), py::arg("dt"), py::arg("tol") = 1e-6);

  py::class_<PlaneCurve>(m, "PlaneCurve")
      .def_static("circle", &PlaneCurve::circle, py::arg("R"), py::arg("n"), py::arg("cx") = 0.0,
                  py::arg("cy") = 0.0)
      .def_static("ellipse", &PlaneCurve::ellipse)
      .def_static("grim_reaper", &PlaneCurve::grim_reaper, py::arg("half_width"), py::arg("n"),
                  py::arg("y_shift") = 0.0)
      .def("size", &PlaneCurve::size)
      .def("xs", [](const PlaneCurve& c) { return c.xs(); })
      .def("ys", [](const PlaneCurve& c) { return c.ys(); })
      .def("is_simple", &PlaneCurve::is_simple);

  m.def("sphere_mean_curvature", &sphere_mean_curvature);
  m.def("curve_mean_curvature", [](const PlaneCurve& c, const Ambient& amb) {
    return curve_geometry(c, amb).H;
  });
  m.def("mcf_step", [](const PlaneCurve& c, const Ambient& amb, double dt) {
    return mcf_step(c, amb, dt);
  });
  m.def("soliton_residual", [](const PlaneCurve& c, const Ambient& amb) {
    const SolitonResidual res = soliton_residual(c, amb);
    return py::make_tuple(res.values, res.sup, res.l2);
  });
  m.def("find_f_minimal_sphere", &find_f_minimal_sphere, py::arg("ambient"), py::arg("m"),
        py::arg("r_lo"), py::arg("r_hi"), py::arg("tol") = 1e-12);

  py::class_<SphereFamily>(m, "SphereFamily")
      .def_readonly("times", &SphereFamily::times)
      .def_readonly("radii", &SphereFamily::radii);
  py::class_<CurveFamily>(m, "CurveFamily")
      .def_readonly("times", &CurveFamily::times)
      .def_readonly("curves", &CurveFamily::curves);
  m.def("construct_soliton_family_sphere",
        [](const SelfSimilarBackground& bg, double R0, const std::vector<double>& times) {
          return construct_soliton_family(bg, R0, times);
        });
  m.def("construct_soliton_family_curve",
        [](const SelfSimilarBackground& bg, const PlaneCurve& seed,
           const std::vector<double>& times) { return construct_soliton_family(bg, seed, times); });
  m.def("reparametrize_to_mcf", &reparametrize_to_mcf);
  m.def("hausdorff_distance", &hausdorff_distance);

  m.def("weighted_area", [](const PlaneCurve& c, const Ambient& amb) {
    return weighted_area(c, amb);
  });
  m.def("weighted_area_sphere", &weighted_area_sphere);
  m.def("huisken_phi", &huisken_phi);
  m.def("f_alpha_radial", [](const Ambient& amb, int mdim, double a, double b) {
    const FunctionalBreakdown fb = f_alpha_radial(amb, mdim, a, b);
    return py::make_tuple(fb.bulk, fb.boundary, fb.total);
  });

  py::class_<McfOptions>(m, "McfOptions").def(py::init<>());
  m.def("evolve_curve_mcf", &evolve_curve_mcf, py::arg("bg"), py::arg("curve"), py::arg("t0"),
        py::arg("t1"), py::arg("dt"), py::arg("snapshot_stride"),
        py::arg("opts") = McfOptions{});

  py::class_<HarnackReport>(m, "HarnackReport")
      .def_readonly("indices", &HarnackReport::indices)
      .def_readonly("total", &HarnackReport::total)
      .def_readonly("dH_dt", &HarnackReport::dH_dt)
      .def_readonly("sup", &HarnackReport::sup)
      .def_readonly("l2", &HarnackReport::l2);
  m.def("extended_harnack", &extended_harnack, py::arg("family"), py::arg("bg"), py::arg("k"),
        py::arg("interior_fraction") = 0.8, py::arg("hypothesis_tol") = 1e-4);

  m.def(
      "check_monotonicity",
      [](const CurveFamily& fam, const SelfSimilarBackground& bg, double tol) {
        const MonotonicityResult res = check_monotonicity(fam, bg, tol);
        py::dict d;
        d["monotone"] = res.monotone;
        d["worst_rel"] = res.worst_rel;
        d["times"] = res.series.times;
        d["area_f"] = res.series.area_f;
        d["phi"] = res.series.phi;
        d["residual_integral"] = res.series.residual_l2;
        return d;
      },
      py::arg("family"), py::arg("bg"), py::arg("tol") = 1e-3);

  m.def("run_scenario_file", [](const std::string& path) {
    return run_scenario(ScenarioConfig::parse_file(path));
  });

  m.def("run_acceptance", []() {
    std::ostringstream os;
    std::vector<CriterionResult> results;
    const bool ok = run_acceptance(os, &results);
    py::list items;
    for (const CriterionResult& c : results) {
      py::dict d;
      d["id"] = c.id;
      d["name"] = c.name;
      d["pass"] = c.pass;
      d["detail"] = c.detail;
      items.append(d);
    }
    return py::make_tuple(ok, os.str(), items);
  });
}
