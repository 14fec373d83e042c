#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geoflow/conformal.hpp"

namespace geoflow {

enum class SolitonClass { steady, shrinking, expanding };

SolitonClass soliton_class_from_string(const std::string& s);
std::string to_string(SolitonClass c);

struct SolitonParams {
  double alpha = 0.0;
  double lambda = 0.0;  // steady 0, shrinking +1/2, expanding -1/2 at the reference slice
  SolitonClass soliton_class = SolitonClass::steady;
  int kappa = 0;  // 0 steady, +1 shrinking, -1 expanding
  double T = 0.0;

  static SolitonParams steady(double alpha = 0.0);
  static SolitonParams shrinking(double T, double alpha = 0.0);
  static SolitonParams expanding(double T, double alpha = 0.0);
  void validate() const;
};

struct SolitonSolution {
  std::vector<double> r;
  std::vector<double> f, fp;
  int n_target = 0;
  std::vector<std::vector<double>> phi, phip;  // one row per node, n_target columns
  double residual_sup = 0.0;

  void write(std::ostream& os) const;  // columnar text format
  static SolitonSolution read(std::istream& is);
};

// First/second derivative triples used by the pointwise residual.
struct Jet2 {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};
struct MapJet2 {
  Vec v, d1, d2;
};

struct RadialResidual {
  double e1 = 0.0;  // metric/potential equation
  Vec e2;           // map equation, one component per target dimension
};

// Pointwise residual of the radial gradient-soliton system.
RadialResidual radial_residual(const RadialProfile& F, const RadialProfile& G, const Jet2& f,
                               const MapJet2& phi, const SolitonParams& params, int m, double r);

// Off-diagonal bracket of the cartesian reduction; vanishes on full solutions.
double radial_offdiag_bracket(const RadialProfile& F, const RadialProfile& G, const Jet2& f,
                              const MapJet2& phi, double alpha, int m, double r);

struct IntegrateOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double fixed_step = 0.0;
  bool regular_origin = false;  // derive first-order data at r0 from the even expansion
  int max_output_nodes = 100000;
};

struct SolitonInit {
  double f0 = 0.0, fp0 = 0.0;
  Vec phi0, phip0;
};

SolitonSolution integrate_soliton(const RadialProfile& F, const RadialProfile& G,
                                  const SolitonParams& params, int m, double r0, double r1,
                                  SolitonInit init, const IntegrateOptions& opts = {});

// Recomputes the residual certificate from the stored grids alone.
double recompute_residual_sup(const SolitonSolution& sol, const RadialProfile& F,
                              const RadialProfile& G, const SolitonParams& params, int m);

struct CartesianResidual {
  SymTensor e1;  // Ric + Hess f - alpha phi*gamma - lambda g
  Vec e2;        // tension - <grad phi, grad f>
};

CartesianResidual cartesian_residual(const RadialProfile& F, const RadialProfile& G,
                                     const ScalarField& f, const MapField& phi,
                                     const SolitonParams& params, int m, const Vec& x);

}  // namespace geoflow
