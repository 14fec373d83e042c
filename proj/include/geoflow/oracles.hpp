#pragma once

// Brute-force reference computations. Everything here differentiates raw
// metric/field components with high-order stencils instead of reusing the
// closed-form curvature formulas, so the two paths can be checked against
// each other.

#include "geoflow/conformal.hpp"

namespace geoflow {
namespace oracles {

// Christoffel symbols from 4th-order finite differences of g_ij = F^-2 delta.
Rank3 christoffel_fd(const AmbientMetric& g, const Vec& x, double h = 1e-4);

// Riemann tensor R^l_ijk from finite differences of the closed-form
// Christoffel symbols, then the Ricci contraction R_ij = g^{kl} R_ikjl.
SymTensor ricci_from_riemann_fd(const AmbientMetric& g, const Vec& x, double h = 1e-4);

// Hessian of a scalar field from finite differences of its values plus the
// closed-form Christoffel symbols.
SymTensor hessian_fd(const AmbientMetric& g, const ScalarField& f, const Vec& x, double h = 1e-3);

// max_k | g^{jl} nabla_j Ric_kl - 1/2 d_k R | with 4th-order stencils.
double contracted_bianchi_residual(const AmbientMetric& g, const Vec& x, double h = 1e-4);

}  // namespace oracles
}  // namespace geoflow
