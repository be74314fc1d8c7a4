#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace magnon {

struct OracleCheck {
  std::string name;
  double max_deviation;
  double tolerance;
  bool passed;
};

// Randomised comparisons of the analytic engine against the dense oracle on a
// chain of n sites (5 <= n <= 14). Jz is held at 0 so both models agree.
std::vector<OracleCheck> run_oracle_checks(int n, int trials, std::uint64_t seed);

}  // namespace magnon
