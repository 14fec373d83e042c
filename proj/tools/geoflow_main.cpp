#include <iostream>
#include <string>

#include "geoflow/registry.hpp"
#include "geoflow/scenario.hpp"

namespace {

void print_usage() {
  std::cout << "usage: geoflow <command> [args]\n"
               "  run <config>     run a scenario described by a key-value config file\n"
               "  suite            run the full verification suite\n"
               "  list-profiles    list the registered closed-form profiles\n"
               "\n"
               "The output root can be overridden with the GEOFLOW_OUT environment\n"
               "variable; relative output.dir values are resolved against it.\n"
               "Exit codes: 0 pass, 1 check failure, 2 configuration error.\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    print_usage();
    return 2;
  }
  const std::string cmd = argv[1];
  try {
    if (cmd == "run") {
      if (argc < 3) {
        std::cerr << "geoflow run: missing config file\n";
        return 2;
      }
      const geoflow::ScenarioConfig cfg = geoflow::ScenarioConfig::parse_file(argv[2]);
      return geoflow::run_scenario(cfg);
    }
    if (cmd == "suite") {
      geoflow::ScenarioConfig cfg;
      cfg.kind = "full-suite";
      cfg.out_dir = "out/suite";
      return geoflow::run_scenario(cfg);
    }
    if (cmd == "list-profiles") {
      for (const std::string& name : geoflow::profile_names()) std::cout << name << "\n";
      return 0;
    }
    if (cmd == "--help" || cmd == "-h" || cmd == "help") {
      print_usage();
      return 0;
    }
  } catch (const geoflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "unknown command: " << cmd << "\n";
  print_usage();
  return 2;
}
