#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace geoflow {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key-value scenario description with dotted sections, e.g.
//   scenario = monotonicity
//   background.profile = gaussian
//   surface.n = 512
struct ScenarioConfig {
  std::string kind;

  std::string profile = "gaussian";
  std::string soliton_class = "shrinking";
  double T = 0.0;
  double alpha = 0.0;
  int dim = 2;

  std::string surface_kind = "circle";
  double radius = 2.0;
  double half_width = 1.4;  // grim reaper truncation
  int n = 512;

  double dt = 1e-5;
  double t_begin = -2.0;
  double t_end = -1.6;
  int snapshot_stride = 500;
  double eps = 1e-4;
  double tol = 1e-3;
  double r0 = 0.01, r1 = 5.0;

  uint64_t seed = 12345;
  std::string out_dir = "out";

  static ScenarioConfig parse_file(const std::string& path);
  static ScenarioConfig parse_text(const std::string& text, const std::string& origin);
};

// Executes the scenario; returns the process exit code (0 pass, 1 check
// failure, 2 configuration error).
int run_scenario(const ScenarioConfig& cfg);

// Resolves the output directory against the GEOFLOW_OUT environment variable.
std::string resolve_out_dir(const std::string& dir);

}  // namespace geoflow
