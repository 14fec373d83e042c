#pragma once

#include <memory>
#include <string>
#include <vector>

#include "geoflow/background.hpp"

namespace geoflow {

// Closed-form profiles used throughout the verification scenarios. Names:
//   euclidean            F = 1
//   gaussian             F = 1, f = lambda r^2 / 2 (class fixes lambda)
//   cigar                F = sqrt(1 + r^2), f = -log(1 + r^2), steady, m = 2
//   round_sphere_chart   F = (1 + r^2) / 2 (static geometry only)
//   grim_reaper_f        F = 1, f = -y, steady, m = 2
//   linear_f             F = 1, f = x_1, steady
std::vector<std::string> profile_names();

RadialProfile make_profile(const std::string& name);

// Full evolving background by name; alpha enters the soliton parameters.
SelfSimilarBackground make_background(const std::string& name, int m, SolitonClass cls, double T,
                                      double alpha = 0.0);

// Static ambient for geometry-only work.
Ambient make_static_ambient(const std::string& profile, int m);

}  // namespace geoflow
