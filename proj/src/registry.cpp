#include "geoflow/registry.hpp"

#include <cmath>
#include <stdexcept>

namespace geoflow {

std::vector<std::string> profile_names() {
  return {"euclidean", "gaussian", "cigar", "round_sphere_chart", "grim_reaper_f", "linear_f"};
}

RadialProfile make_profile(const std::string& name) {
  if (name == "euclidean" || name == "gaussian" || name == "grim_reaper_f" || name == "linear_f")
    return RadialProfile::constant(1.0);
  if (name == "cigar")
    return RadialProfile::make([](double r) { return std::sqrt(1.0 + r * r); },
                               [](double r) { return r / std::sqrt(1.0 + r * r); },
                               [](double r) { return std::pow(1.0 + r * r, -1.5); });
  if (name == "round_sphere_chart")
    return RadialProfile::make([](double r) { return 0.5 * (1.0 + r * r); },
                               [](double r) { return r; }, [](double) { return 1.0; });
  throw std::invalid_argument("unknown profile: " + name);
}

namespace {

RadialProfile cigar_potential() {
  return RadialProfile::make([](double r) { return -std::log(1.0 + r * r); },
                             [](double r) { return -2.0 * r / (1.0 + r * r); },
                             [](double r) {
                               const double d = 1.0 + r * r;
                               return (2.0 * r * r - 2.0) / (d * d);
                             });
}

RadialProfile gaussian_potential(double lambda) {
  return RadialProfile::make([lambda](double r) { return 0.5 * lambda * r * r; },
                             [lambda](double r) { return lambda * r; },
                             [lambda](double) { return lambda; });
}

}  // namespace

SelfSimilarBackground make_background(const std::string& name, int m, SolitonClass cls, double T,
                                      double alpha) {
  SolitonParams params;
  switch (cls) {
    case SolitonClass::steady: params = SolitonParams::steady(alpha); break;
    case SolitonClass::shrinking: params = SolitonParams::shrinking(T, alpha); break;
    case SolitonClass::expanding: params = SolitonParams::expanding(T, alpha); break;
  }
  const TargetMetric gamma = TargetMetric::euclidean(1);
  const MapField phi = MapField::constant(Vec{0.0}, m);

  if (name == "gaussian") {
    if (cls == SolitonClass::steady)
      return SelfSimilarBackground(AmbientMetric::euclidean(m), gamma,
                                   RadialProfile::constant(0.0), phi, params);
    return SelfSimilarBackground(AmbientMetric::euclidean(m), gamma,
                                 gaussian_potential(params.lambda), phi, params);
  }
  if (name == "cigar") {
    if (m != 2 || cls != SolitonClass::steady)
      throw std::invalid_argument("cigar background requires m = 2, steady class");
    return SelfSimilarBackground(AmbientMetric{2, make_profile("cigar")}, gamma,
                                 cigar_potential(), phi, params);
  }
  if (name == "grim_reaper_f") {
    if (m != 2 || cls != SolitonClass::steady)
      throw std::invalid_argument("grim_reaper_f background requires m = 2, steady class");
    return SelfSimilarBackground(AmbientMetric::euclidean(2), gamma, Vec{0.0, -1.0}, 0.0, phi,
                                 params);
  }
  if (name == "linear_f") {
    if (cls != SolitonClass::steady)
      throw std::invalid_argument("linear_f background requires the steady class");
    Vec grad(m, 0.0);
    grad[0] = 1.0;
    return SelfSimilarBackground(AmbientMetric::euclidean(m), gamma, grad, 0.0, phi, params);
  }
  if (name == "euclidean") {
    if (cls != SolitonClass::steady)
      throw std::invalid_argument("euclidean background requires the steady class");
    return SelfSimilarBackground(AmbientMetric::euclidean(m), gamma, RadialProfile::constant(0.0),
                                 phi, params);
  }
  throw std::invalid_argument("no evolving background is registered under: " + name);
}

Ambient make_static_ambient(const std::string& profile, int m) {
  Ambient amb;
  amb.g = AmbientMetric{m, make_profile(profile)};
  amb.gamma = TargetMetric::euclidean(1);
  amb.f = ScalarField::constant(0.0, m);
  amb.phi = MapField::constant(Vec{0.0}, m);
  amb.alpha = 0.0;
  if (profile == "gaussian")
    amb.f = ScalarField::radial(gaussian_potential(0.5));
  if (profile == "cigar") amb.f = ScalarField::radial(cigar_potential());
  if (profile == "grim_reaper_f") amb.f = ScalarField::linear({0.0, -1.0});
  if (profile == "linear_f") {
    Vec grad(m, 0.0);
    grad[0] = 1.0;
    amb.f = ScalarField::linear(grad);
  }
  return amb;
}

}  // namespace geoflow
