#pragma once

#include <cstdint>
#include <vector>

#include "heuristics.hpp"
#include "instance.hpp"

namespace cle {

// Exact expected optimisation times on small instances, from the absorbing
// Markov chain over all 2^n search points. States are bit masks with bit j
// holding position j. Size caps: RLS builds sparse rows (n + n(n-1)/2
// successors), the EA kernel enumerates all 2^n flip masks per state.
inline constexpr std::size_t kOracleMaxBitsRls = 14;
inline constexpr std::size_t kOracleMaxBitsEa = 10;

struct HittingTimeReport {
  std::size_t n;
  std::uint64_t b;
  AlgorithmSpec algo;
  // Expected remaining steps per state, indexed by mask; 0 on optimal states.
  std::vector<double> per_state;
  double from_uniform;
  double max_state_time;
};

HittingTimeReport exact_expected_times(const Instance& inst, AlgorithmSpec algo);

// One-step distribution implied by the step operation at `state`, including
// the rejection/no-op self-loop. Pairs are (successor mask, probability),
// sorted by mask; probabilities sum to 1.
std::vector<std::pair<std::uint32_t, double>> transition_distribution(
    const Instance& inst, AlgorithmSpec algo, std::uint32_t state);

}  // namespace cle
