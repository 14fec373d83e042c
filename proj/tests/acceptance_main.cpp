#include <iostream>

#include "geoflow/acceptance.hpp"

int main() {
  const bool ok = geoflow::run_acceptance(std::cout);
  return ok ? 0 : 1;
}
