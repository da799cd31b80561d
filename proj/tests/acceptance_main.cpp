// One line per criterion; exits nonzero when any criterion fails.
#include <iostream>

#include "cbeam/acceptance.hpp"

int main() {
  const auto results = cbeam::run_acceptance();
  int failed = 0;
  for (const auto& r : results) {
    std::cout << cbeam::format_result(r) << "\n";
    failed += !r.passed;
  }
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
