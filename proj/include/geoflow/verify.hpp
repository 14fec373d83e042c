#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geoflow/conjugate_heat.hpp"
#include "geoflow/functionals.hpp"
#include "geoflow/surfaces.hpp"

namespace geoflow {

// Evolution equation checks on a reparametrized (purely normal) curve family
// around snapshot k. Reported lhs/rhs are the values at the worst vertex; the
// relative error is the max over vertices.
FDReport check_metric_evolution(const CurveFamily& family,
                                const std::function<Ambient(double)>& ambient, size_t k,
                                double tol);
FDReport check_H_evolution(const CurveFamily& family,
                           const std::function<Ambient(double)>& ambient, size_t k, double tol);
FDReport check_area_element(const CurveFamily& family,
                            const std::function<Ambient(double)>& ambient, size_t k, double tol);

struct MonotonicityResult {
  WeightedAreaSeries series;
  std::vector<FDReport> derivative_identity;  // one per interior snapshot
  bool monotone = true;
  double worst_rel = 0.0;
};

// dPhi/dt vs the weighted soliton-residual integral along an MCF curve family.
MonotonicityResult check_monotonicity(const CurveFamily& family, const SelfSimilarBackground& bg,
                                      double tol_match, double tol_mono = 1e-10);
MonotonicityResult check_monotonicity_spheres(const SphereFamily& family,
                                              const SelfSimilarBackground& bg, double tol_match,
                                              double tol_mono = 1e-10);

// Both restricted translating-soliton equations on the surface frame.
struct TranslatingSolitonReport {
  FDReport eq_metric;    // R + hess f + H A - alpha pullback restricted, sup vs 0
  FDReport eq_codazzi;   // R_{i0} - grad H + A grad f restricted, sup vs 0
};
TranslatingSolitonReport check_translating_soliton_eqs(const CurveFamily& family,
                                                       const SelfSimilarBackground& bg, size_t k,
                                                       double tol, double interior_fraction = 0.8);

// Full pipeline for the functional derivative identity on a shrinking-circle
// disk in flat space with the conjugate-heat weight.
struct DerivativeIdentityResult {
  FDReport report;
  double lhs = 0.0, rhs_bulk = 0.0, rhs_boundary = 0.0;
};

DerivativeIdentityResult check_derivative_identity_disk(int nheat_nodes, double heat_ds, int nquad, double R0, double t_begin,
                           double t_end, double t_eval, double fd_dt, double tol);

// Steady configuration: both sides evaluated on the translating soliton family,
// expected to vanish within tol (absolute).
struct DerivativeIdentitySteadyResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};
DerivativeIdentitySteadyResult check_derivative_identity_steady_translating(int n_vertices, double tol);

void write_reports_csv(std::ostream& os, const std::vector<FDReport>& reports);
void write_summary(std::ostream& os, const std::vector<FDReport>& reports);

}  // namespace geoflow
