#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cle {

struct CheckReport {
  std::uint64_t seed = 0;
  std::uint32_t instances = 0;
  std::uint64_t checks = 0;  // individual assertions evaluated
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

// Randomized invariant suite over generated instances (n <= max_n): weight
// ordering and optimum against brute force, penalty dominance, fitness
// monotonicity, permutation invariance, trial determinism and trajectory
// invariants, potential structure, the potential-zero characterisation,
// RLS drift sign, and transition distributions summing to one.
CheckReport run_invariant_checks(std::uint64_t seed, std::uint32_t instances,
                                 std::uint32_t max_n);

}  // namespace cle
