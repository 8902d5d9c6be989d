#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "bit_string.hpp"
#include "instance.hpp"

namespace cle::test {

// Positions in 1-based notation (1 = smallest weight), the form the worked
// examples use.
inline BitString ones_at_1based(std::size_t n, std::initializer_list<int> positions) {
  BitString x(n);
  for (int pos : positions) x.set(static_cast<std::size_t>(pos - 1), true);
  return x;
}

inline BitString from_mask(std::size_t n, std::uint32_t mask) {
  BitString x(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1u) x.set(i, true);
  return x;
}

// Brute-force optimum over all 2^n strings; the independent oracle for
// f_opt and the penalty ordering.
struct BruteForce {
  std::uint64_t min_feasible_objective = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_feasible_total = 0;
  std::uint64_t min_infeasible_total = std::numeric_limits<std::uint64_t>::max();
  bool any_infeasible = false;

  explicit BruteForce(const Instance& inst) {
    const std::size_t n = inst.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const BitString x = from_mask(n, mask);
      const Fitness f = inst.fitness(x);
      if (inst.feasible(x)) {
        min_feasible_objective = std::min(min_feasible_objective, f.objective);
        max_feasible_total = std::max(max_feasible_total, f.total);
      } else {
        any_infeasible = true;
        min_infeasible_total = std::min(min_infeasible_total, f.total);
      }
    }
  }
};

}  // namespace cle::test
