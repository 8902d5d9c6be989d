#include "heuristics.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace cle {

namespace detail {

MutationSampler::MutationSampler(std::size_t n, std::uint32_t rate_numerator)
    : n_(n) {
  if (rate_numerator == 0 || rate_numerator > n)
    throw std::invalid_argument("mutation rate numerator must satisfy 1 <= c <= n");
  cdf.assign(n + 1, 1.0);
  if (rate_numerator == n) {
    // p = 1: every bit flips.
    for (std::size_t k = 0; k + 1 <= n; ++k) cdf[k] = 0.0;
    return;
  }
  const double p = static_cast<double>(rate_numerator) / static_cast<double>(n);
  const double q = 1.0 - p;
  double prob = 1.0;
  for (std::size_t i = 0; i < n; ++i) prob *= q;  // P(0 flips)
  const double ratio = p / q;
  double cumulative = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    cumulative += prob;
    cdf[k] = std::min(cumulative, 1.0);
    if (k < n)
      prob *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  cdf[n] = 1.0;
}

void MutationSampler::sample(Rng& rng, std::vector<std::uint32_t>& flips) const {
  const double u = rng.unit();
  const std::size_t k =
      std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
  if (k == 0) return;
  // Floyd's algorithm: k distinct uniform positions in [0, n).
  for (std::size_t j = n_ - k; j < n_; ++j) {
    const auto candidate = static_cast<std::uint32_t>(rng.below(j + 1));
    if (std::find(flips.begin(), flips.end(), candidate) != flips.end())
      flips.push_back(static_cast<std::uint32_t>(j));
    else
      flips.push_back(candidate);
  }
}

}  // namespace detail

namespace {

// Mutable trial state with O(flips) fitness updates.
struct Walker {
  const Instance& inst;
  BitString x;
  std::uint64_t objective;

  Walker(const Instance& instance, BitString start)
      : inst(instance), x(std::move(start)), objective(inst.objective(x)) {}

  std::uint64_t total() const { return inst.total_of(objective, x.ones()); }

  // Applies the flip set iff the offspring total is <= the current total.
  bool try_flips(const std::vector<std::uint32_t>& flips) {
    std::uint64_t gained = 0;
    std::uint64_t lost = 0;
    std::size_t ones = x.ones();
    for (std::uint32_t pos : flips) {
      if (x.test(pos)) {
        lost += inst.weight(pos);
        --ones;
      } else {
        gained += inst.weight(pos);
        ++ones;
      }
    }
    const std::uint64_t next_objective = objective + gained - lost;
    if (inst.total_of(next_objective, ones) > total()) return false;
    for (std::uint32_t pos : flips) x.flip(pos);
    objective = next_objective;
    return true;
  }
};

void draw_rls_flips(std::size_t n, Rng& rng, std::vector<std::uint32_t>& flips) {
  if (rng.coin()) {
    flips.push_back(static_cast<std::uint32_t>(rng.below(n)));
    return;
  }
  if (n < 2) return;  // pair move impossible; counted no-op
  const auto first = static_cast<std::uint32_t>(rng.below(n));
  auto second = static_cast<std::uint32_t>(rng.below(n - 1));
  if (second >= first) ++second;
  flips.push_back(first);
  flips.push_back(second);
}

}  // namespace

BitString uniform_start(std::size_t n, Rng& rng) {
  BitString x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, rng.coin());
  return x;
}

std::pair<BitString, bool> rls_step(const Instance& inst, const BitString& x,
                                    Rng& rng) {
  Walker walker(inst, x);
  std::vector<std::uint32_t> flips;
  draw_rls_flips(inst.size(), rng, flips);
  const bool accepted = walker.try_flips(flips);
  return {std::move(walker.x), accepted};
}

std::pair<BitString, bool> ea_step(const Instance& inst, const BitString& x,
                                   std::uint32_t rate_numerator, Rng& rng) {
  const detail::MutationSampler sampler(inst.size(), rate_numerator);
  Walker walker(inst, x);
  std::vector<std::uint32_t> flips;
  sampler.sample(rng, flips);
  const bool accepted = walker.try_flips(flips);
  return {std::move(walker.x), accepted};
}

TrialResult run_trial(const Instance& inst, AlgorithmSpec algo,
                      std::uint64_t seed, std::uint64_t max_iters,
                      const BitString* start) {
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  const std::size_t n = inst.size();

  std::optional<detail::MutationSampler> sampler;
  if (algo.kind == Algo::Ea) sampler.emplace(n, algo.rate_numerator);

  if (start && start->size() != n)
    throw std::invalid_argument("start string length does not match the instance");
  Rng rng(seed);
  Walker walker(inst, start ? *start : uniform_start(n, rng));

  bool feasible = walker.x.ones() >= inst.bound();
  std::uint64_t feasibility_hit = feasible ? 0 : max_iters;
  if (feasible && walker.objective == inst.f_opt())
    return {0, 0, seed, false};

  std::vector<std::uint32_t> flips;
  for (std::uint64_t t = 1; t <= max_iters; ++t) {
    flips.clear();
    if (algo.kind == Algo::Rls)
      draw_rls_flips(n, rng, flips);
    else
      sampler->sample(rng, flips);
    walker.try_flips(flips);
    if (!feasible && walker.x.ones() >= inst.bound()) {
      feasible = true;
      feasibility_hit = t;
    }
    if (feasible && walker.objective == inst.f_opt())
      return {t, feasibility_hit, seed, false};
  }
  return {max_iters, feasibility_hit, seed, true};
}

}  // namespace cle
