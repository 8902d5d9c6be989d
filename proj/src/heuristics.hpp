#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "instance.hpp"
#include "rng.hpp"

namespace cle {

enum class Algo { Rls, Ea };

struct AlgorithmSpec {
  Algo kind = Algo::Ea;
  // EA only: each bit flips with probability rate_numerator / n.
  std::uint32_t rate_numerator = 1;
};

struct TrialResult {
  // Mutation/selection steps until the current point first is optimal; the
  // initial sample does not count, so a trial starting at the optimum is 0.
  std::uint64_t iterations;
  // Step index at which a feasible point was first held (0 if the start was
  // feasible, max_iters if the cap was reached while still infeasible).
  std::uint64_t feasibility_hit;
  std::uint64_t seed;
  bool hit_cap;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

inline constexpr std::uint64_t kDefaultMaxIters = 10'000'000'000ull;

// Each bit independently 1 with probability 1/2; one RNG draw per bit.
BitString uniform_start(std::size_t n, Rng& rng);

// One RLS step: with probability 1/2 flip one uniform bit, otherwise flip a
// uniform unordered pair of distinct bits (for n = 1 the pair branch is a
// counted no-op). The offspring replaces x iff its fitness total is <= x's.
std::pair<BitString, bool> rls_step(const Instance& inst, const BitString& x,
                                    Rng& rng);

// One (1+1) EA step: every bit flips independently with probability
// rate_numerator / n; same acceptance rule. The all-zero mutation counts as
// an accepted step.
std::pair<BitString, bool> ea_step(const Instance& inst, const BitString& x,
                                   std::uint32_t rate_numerator, Rng& rng);

// Runs one trial to the first optimal point (or max_iters). The start
// defaults to a uniform random string drawn from the same stream. A trial is
// a pure function of (instance, algo, seed, max_iters, start).
TrialResult run_trial(const Instance& inst, AlgorithmSpec algo,
                      std::uint64_t seed,
                      std::uint64_t max_iters = kDefaultMaxIters,
                      const BitString* start = nullptr);

namespace detail {

// Flip-count distribution of standard bit mutation: Binomial(n, c/n) sampled
// by inversion from one unit draw, followed by a uniform flip set (Floyd).
// Identical in distribution to n independent per-bit coins, but O(c) per
// step instead of O(n). The CDF is built once per (n, c) with fixed-order
// double arithmetic, so sampling stays platform independent.
class MutationSampler {
 public:
  MutationSampler(std::size_t n, std::uint32_t rate_numerator);

  // Appends the flipped positions (unsorted, distinct) to `flips`.
  void sample(Rng& rng, std::vector<std::uint32_t>& flips) const;

 private:
  std::size_t n_;
  std::vector<double> cdf;  // cdf[k] = P(flips <= k)
};

}  // namespace detail

}  // namespace cle
