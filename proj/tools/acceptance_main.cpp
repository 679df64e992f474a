#include "gfs/selftest/acceptance.hpp"

#include <chrono>
#include <iomanip>
#include <iostream>

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = gfs::selftest::run_all(&std::cout);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  const bool in_budget = total <= gfs::selftest::kSuiteBudgetSeconds;
  std::cout << (in_budget ? "PASS" : "FAIL") << "  suite budget  " << std::fixed << std::setprecision(2) << total
            << " s / " << std::setprecision(0) << gfs::selftest::kSuiteBudgetSeconds << " s\n";
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
  return failed == 0 && in_budget ? 0 : 1;
}
