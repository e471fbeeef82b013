#include <cstdlib>
#include <iostream>
#include <string>

#include "misrep_app/acceptance.hpp"

// Usage: misrep_acceptance [suite]
int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  misrep::app::AcceptanceOptions options;
  if (const char* s = std::getenv("MISREP_ACCEPTANCE_SEED")) options.seed = std::stoull(s);
  try {
    return misrep::app::run_suite(suite, std::cout, options) ? 0 : 1;
  } catch (const std::out_of_range&) {
    std::cerr << "unknown suite '" << suite << "'\n";
    return 2;
  }
}
