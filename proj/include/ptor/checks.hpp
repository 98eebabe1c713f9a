#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ptor {

struct CheckResult {
  std::string suite;
  std::string name;
  double max_residual;
  double tol;
  bool pass;
};

std::vector<std::string> check_suites();

/// Runs the named invariant suite ("all" for everything) on seeded random
/// inputs at resolution n.
std::vector<CheckResult> run_checks(const std::string& suite, int n,
                                    std::uint64_t seed);

}  // namespace ptor
