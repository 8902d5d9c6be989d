#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "heuristics.hpp"
#include "instance.hpp"

namespace cle {

enum class PotentialVariant { General, Modified };

// Maximal run of positions sharing one weight value. Blocks are numbered
// from 0 at the smallest weight; `kappa` is the nearest block at or below
// this one whose g-weight sits exactly on its gamma cap (block 0 always
// does, so kappa is well defined).
struct PotentialBlock {
  std::size_t begin;  // first position, 0-based
  std::size_t end;    // one past the last position
  bool capped;
  std::size_t kappa;
};

// Adaptive potential for the constrained regime (b >= 1).
//
// Per-position cap, with j the 1-based position:
//   gamma_j = 1                     for j <= b
//   gamma_j = 75 b (j - b)^7        beyond (General)
//   gamma_j = 8 (j - b)^7           beyond (Modified; requires w_1 = w_b)
// Weights: g_1 = 1, g_j = min{gamma_j, g_{j-1} * w_j / w_{j-1}}, so g is
// nondecreasing, g_j <= gamma_j, g is constant on blocks, and g_j = 1 for
// all j <= b. The value of a search point,
//   g(x) = sum_{j > b, x_j = 1} g_j - sum_{j <= b, x_j = 0} g_j,
// is >= 0 on feasible points and exactly 0.0 at the optimum profile (no
// cancellation: both sums are empty there).
class PotentialProfile {
 public:
  PotentialProfile(const Instance& inst, PotentialVariant variant);

  const Instance& instance() const { return inst_; }
  PotentialVariant variant() const { return variant_; }

  double g(std::size_t pos) const { return g_[pos]; }
  double gamma(std::size_t pos) const { return gamma_[pos]; }
  std::span<const PotentialBlock> blocks() const { return blocks_; }
  std::size_t block_of(std::size_t pos) const { return block_of_[pos]; }

  // Block-index ranges around the capping block of `block` (half-open):
  // left_of_cap covers the capping block and everything more significant,
  // right_of_cap everything less significant.
  std::pair<std::size_t, std::size_t> left_of_cap(std::size_t block) const {
    return {blocks_[block].kappa, blocks_.size()};
  }
  std::pair<std::size_t, std::size_t> right_of_cap(std::size_t block) const {
    return {0, blocks_[block].kappa};
  }

  // Sum of all g_j; upper bound on any potential value.
  double g_max() const { return g_max_; }

  // Lower bound on the smallest positive potential value over feasible
  // non-optimal points: exact (brute force) for n <= 16, otherwise
  // min({1} U {g_j - 1 : j > b, g_j > 1}). The latter is valid because a
  // positive value either carries a surplus one-bit (>= 1) or pairs each
  // misplaced one-bit at g_j with a missing g-weight of exactly 1.
  double s_min_pos() const { return s_min_pos_; }

  double value(const BitString& x) const;

 private:
  Instance inst_;
  PotentialVariant variant_;
  std::vector<double> gamma_;
  std::vector<double> g_;
  std::vector<PotentialBlock> blocks_;
  std::vector<std::size_t> block_of_;
  double g_max_;
  double s_min_pos_;
};

// State-wise drift lower bound of the variant at potential value X:
//   General:  0.025 / (e n^2) * min{X^{8/7} / b^{2/7}, X}
//   Modified: 0.055 / (e n^2) * X^{15/14}
double drift_lower_bound(const PotentialProfile& profile, double potential);

// Exact one-step potential drift of RLS at x: enumerates all n single flips
// (probability 1/(2n) each) and all n(n-1)/2 pair flips (probability
// 1/(n(n-1)) each), applies the acceptance rule, and returns
// E[g(x) - g(x')]. Requires x feasible.
double exact_rls_drift(const PotentialProfile& profile, const BitString& x);

struct DriftEstimate {
  double mean;
  double std_error;
  std::uint64_t samples;
};

// Monte Carlo counterpart for the EA: `samples` independent mutations of x
// with acceptance, returning mean and standard error of g(x) - g(x').
// Requires x feasible.
DriftEstimate estimate_ea_drift(const PotentialProfile& profile,
                                const BitString& x,
                                std::uint32_t rate_numerator,
                                std::uint64_t samples, Rng& rng);

}  // namespace cle
