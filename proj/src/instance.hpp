#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bit_string.hpp"

namespace cle {

struct Fitness {
  std::uint64_t objective;
  std::uint64_t penalty;
  std::uint64_t total;

  friend bool operator==(const Fitness&, const Fitness&) = default;
};

// A linear function under the uniform constraint ones(x) >= b, to be
// minimised. Weights are stored sorted ascending (the constraint is
// permutation invariant, so sorting loses no generality). Construction
// verifies that no fitness value can ever exceed the 64-bit range:
// the largest total is max(sum(w), b * (n * w_max + 1)).
class Instance {
 public:
  Instance(std::vector<std::uint64_t> weights, std::uint64_t bound);

  static Instance from_json(std::string_view text);
  std::string to_json() const;

  std::size_t size() const { return weights_.size(); }
  std::uint64_t bound() const { return bound_; }
  const std::vector<std::uint64_t>& weights() const { return weights_; }
  std::uint64_t weight(std::size_t pos) const { return weights_[pos]; }
  std::uint64_t w_max() const { return weights_.back(); }
  std::uint64_t f_opt() const { return f_opt_; }

  // n * w_max + 1: one unit of constraint violation outweighs any objective.
  std::uint64_t penalty_unit() const { return penalty_unit_; }

  std::uint64_t objective(const BitString& x) const;
  std::uint64_t total_of(std::uint64_t objective, std::size_t ones) const {
    const std::uint64_t missing = bound_ > ones ? bound_ - ones : 0;
    return objective + missing * penalty_unit_;
  }

  Fitness fitness(const BitString& x) const;
  bool feasible(const BitString& x) const;
  bool tight(const BitString& x) const;
  bool optimal(const BitString& x) const;

 private:
  void check_length(const BitString& x) const;

  std::vector<std::uint64_t> weights_;
  std::uint64_t bound_;
  std::uint64_t f_opt_;
  std::uint64_t penalty_unit_;
};

// w_i = i. The b = 0 case is the unconstrained baseline.
Instance gen_iota(std::size_t n, std::uint64_t bound);

// Hard instance for RLS: b = n/4, the b cheapest positions weigh W = 1000 and
// the rest W + 1, an integer stand-in for weights 1 and 1 + epsilon.
// Requires n divisible by 4.
Instance gen_lower_bound(std::size_t n);

// w_1 = ... = w_b = 1 and w_j = 1 + (j - b) beyond: the b smallest weights
// are identical while the remaining ones stay distinct.
Instance gen_onemax_like(std::size_t n, std::uint64_t bound);

// n weights drawn uniformly from [1, w_max] with the project RNG, sorted.
Instance gen_random(std::size_t n, std::uint64_t bound, std::uint64_t w_max,
                    std::uint64_t seed);

}  // namespace cle
