// Runs the ten acceptance criteria on the full parameter grid.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "iwasawa/selftest.hpp"

namespace {

// per-criterion wall-clock budgets in seconds
constexpr double kBudget[] = {30, 10, 15, 5, 5, 10, 20, 5, 10, 15};

}  // namespace

int main(int argc, char** argv) {
  iwa::selftest::Config cfg;
  if (argc > 1) cfg.seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  double total = 0;
  for (const auto& r : iwa::selftest::run_all(cfg)) {
    const double budget = kBudget[r.id - 1];
    const bool pass = r.pass && r.seconds < budget;
    std::string detail = r.detail;
    if (r.pass && !pass) detail = "over the " + std::to_string(static_cast<int>(budget)) + " s budget";
    std::printf("%s [%2d] %-38s trials=%-4ld %7.2f s  %s\n", pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.trials,
                r.seconds, detail.c_str());
    total += r.seconds;
    failed += !pass;
  }
  std::printf("total %.2f s, %d of 10 criteria failed\n", total, failed);
  return failed == 0 && total < 120 ? 0 : 1;
}
