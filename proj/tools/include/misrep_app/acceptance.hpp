#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace misrep::app {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  // Measured values next to their thresholds.
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

const std::vector<std::string>& suite_names();
// Criterion ids run by a suite; throws std::out_of_range on an unknown name.
std::vector<int> suite_criteria(const std::string& suite);

CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

// One line per criterion: "PASS|FAIL  C<n>  <title>  <detail>  (<seconds> s)".
void print_result(std::ostream& out, const CriterionResult& r);

// Runs every criterion of the suite, printing as it goes; true iff all pass.
bool run_suite(const std::string& suite, std::ostream& out, const AcceptanceOptions& options = {});

}  // namespace misrep::app
