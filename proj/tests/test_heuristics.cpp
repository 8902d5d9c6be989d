#include "doctest.h"
#include "helpers.hpp"
#include "heuristics.hpp"
#include "instance.hpp"

#include <cmath>
#include <map>

using namespace cle;
using cle::test::from_mask;
using cle::test::ones_at_1based;

TEST_CASE("uniform start: determinism, cached ones, balance") {
  Rng a(3), b(3);
  const BitString x = uniform_start(50, a);
  CHECK(x == uniform_start(50, b));
  std::size_t ones = 0;
  for (std::size_t i = 0; i < x.size(); ++i) ones += x.test(i);
  CHECK(ones == x.ones());

  Rng rng(17);
  int count = 0;
  constexpr int kDraws = 100'000;
  for (int i = 0; i < kDraws; ++i) count += uniform_start(1, rng).test(0);
  const double sigma = std::sqrt(0.25 / kDraws);
  CHECK(std::abs(count / static_cast<double>(kDraws) - 0.5) < 3 * sigma);
}

TEST_CASE("RLS moves are the documented neighbourhood") {
  // All-accepting instance: every weight 0, no constraint.
  const Instance flat(std::vector<std::uint64_t>(4, 0), 0);
  const BitString origin(4);
  std::map<std::uint32_t, int> histogram;
  Rng rng(23);
  constexpr int kDraws = 240'000;
  for (int i = 0; i < kDraws; ++i) {
    const auto [next, accepted] = rls_step(flat, origin, rng);
    CHECK(accepted);
    std::uint32_t mask = 0;
    for (std::size_t pos = 0; pos < 4; ++pos)
      if (next.test(pos)) mask |= 1u << pos;
    ++histogram[mask];
  }
  // 4 single flips at 1/8 each, 6 pair flips at 1/12 each, nothing else.
  CHECK(histogram.size() == 10);
  for (const auto& [mask, count] : histogram) {
    const int bits = __builtin_popcount(mask);
    CHECK((bits == 1 || bits == 2));
    const double expect = bits == 1 ? kDraws / 8.0 : kDraws / 12.0;
    const double sigma = std::sqrt(expect * (1.0 - (bits == 1 ? 0.125 : 1.0 / 12)));
    CHECK(std::abs(count - expect) < 5 * sigma);
  }
}

TEST_CASE("RLS acceptance on the worked instance") {
  const Instance inst({1, 2, 3, 4}, 2);
  const BitString start = ones_at_1based(4, {1, 3});  // objective 4, tight

  // A tight point never accepts a move that raises the total; the only
  // strictly improving move is the swap to {1, 2}.
  Rng rng(5);
  bool saw_swap = false;
  for (int i = 0; i < 4000; ++i) {
    const auto [next, accepted] = rls_step(inst, start, rng);
    CHECK(inst.fitness(next).total <= inst.fitness(start).total);
    if (accepted && next == ones_at_1based(4, {1, 2})) saw_swap = true;
  }
  CHECK(saw_swap);

  // Flipping a single one-bit off a tight point is always rejected: the
  // penalty raises the total by (n w_max + 1) - w_i > 0.
  const Fitness tight_fit = inst.fitness(start);
  BitString infeasible = start;
  infeasible.set(0, false);
  const Fitness broken = inst.fitness(infeasible);
  CHECK(broken.total == tight_fit.total - 1 + 17);
  CHECK(broken.total > tight_fit.total);
}

TEST_CASE("EA with c = n flips everything; infeasible offspring rejected") {
  const Instance onemax = gen_onemax_like(6, 6);
  Rng rng(9);
  const auto [next, accepted] = ea_step(onemax, BitString::all_ones(6), 6, rng);
  CHECK_FALSE(accepted);
  CHECK(next == BitString::all_ones(6));

  // Without a constraint the full flip of the all-ones string is accepted.
  const Instance free_inst = gen_iota(6, 0);
  Rng rng2(9);
  const auto [zeroed, ok] = ea_step(free_inst, BitString::all_ones(6), 6, rng2);
  CHECK(ok);
  CHECK(zeroed == BitString(6));
}

TEST_CASE("EA mutation flips Binomial(n, c/n) bits") {
  constexpr int kSamples = 1'000'000;
  // Raw sampler distribution against the exact binomial pmf.
  const detail::MutationSampler sampler(100, 2);
  std::vector<std::uint32_t> flips;
  std::vector<int> histogram(101, 0);
  double total_flips = 0.0;
  Rng rng2(32);
  for (int i = 0; i < kSamples; ++i) {
    flips.clear();
    sampler.sample(rng2, flips);
    ++histogram[flips.size()];
    total_flips += static_cast<double>(flips.size());
    if (i < 100)
      for (std::size_t a = 0; a < flips.size(); ++a)
        for (std::size_t b = a + 1; b < flips.size(); ++b)
          CHECK(flips[a] != flips[b]);
  }
  const double mean = total_flips / kSamples;
  const double sigma = std::sqrt(100 * 0.02 * 0.98 / kSamples);
  CHECK(std::abs(mean - 2.0) < 3 * sigma);

  // Exact pmf computed independently (log-space binomial coefficients).
  for (int k = 0; k <= 8; ++k) {
    double log_pmf = std::lgamma(101.0) - std::lgamma(k + 1.0) -
                     std::lgamma(101.0 - k) + k * std::log(0.02) +
                     (100.0 - k) * std::log(0.98);
    const double expect = kSamples * std::exp(log_pmf);
    const double band = 5.0 * std::sqrt(expect) + 5.0;
    CHECK(std::abs(histogram[k] - expect) < band);
  }
}

TEST_CASE("trials: start at optimum, determinism, feasibility ordering") {
  const Instance inst = gen_iota(30, 10);
  const BitString opt = [&] {
    BitString x(30);
    for (std::size_t i = 0; i < 10; ++i) x.set(i, true);
    return x;
  }();
  const TrialResult at_opt = run_trial(inst, {Algo::Rls, 1}, 77, 1000, &opt);
  CHECK(at_opt.iterations == 0);
  CHECK(at_opt.feasibility_hit == 0);
  CHECK_FALSE(at_opt.hit_cap);

  for (const Algo kind : {Algo::Rls, Algo::Ea}) {
    const AlgorithmSpec algo{kind, 2};
    const TrialResult first = run_trial(inst, algo, 123);
    const TrialResult second = run_trial(inst, algo, 123);
    CHECK(first == second);
    CHECK(first.feasibility_hit <= first.iterations);
    CHECK_FALSE(first.hit_cap);
  }

  const TrialResult capped = run_trial(inst, {Algo::Rls, 1}, 123, 1);
  CHECK(capped.hit_cap);
  CHECK(capped.iterations == 1);
}

TEST_CASE("trajectories: fitness monotone, feasibility sticky, tight b frozen") {
  const Instance inst = gen_iota(24, 8);
  for (const Algo kind : {Algo::Rls, Algo::Ea}) {
    Rng rng(kind == Algo::Rls ? 41u : 42u);
    BitString x = uniform_start(24, rng);
    std::uint64_t total = inst.fitness(x).total;
    bool was_feasible = inst.feasible(x);
    bool was_tight = inst.tight(x);
    for (int step = 0; step < 4000; ++step) {
      auto [next, accepted] =
          kind == Algo::Rls ? rls_step(inst, x, rng) : ea_step(inst, x, 1, rng);
      const std::uint64_t next_total = inst.fitness(next).total;
      CHECK(next_total <= total);
      if (was_feasible) CHECK(inst.feasible(next));
      if (kind == Algo::Rls && was_tight) CHECK(next.ones() == x.ones());
      x = std::move(next);
      total = next_total;
      was_feasible = was_feasible || inst.feasible(x);
      was_tight = was_tight || inst.tight(x);
    }
  }
}

TEST_CASE("tight states: improving probability is at least k^2 / (2 n^2)") {
  for (std::size_t n = 2; n <= 9; ++n) {
    for (std::uint64_t b = 1; b <= n; ++b) {
      const Instance inst = gen_iota(n, b);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const BitString x = from_mask(n, mask);
        if (!inst.tight(x) || inst.optimal(x)) continue;
        std::uint64_t k = 0;
        for (std::uint64_t i = 0; i < b; ++i) k += !x.test(i);
        const std::uint64_t total = inst.fitness(x).total;

        double improving = 0.0;
        const double p_single = 1.0 / (2.0 * static_cast<double>(n));
        const double p_pair =
            1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
        for (std::size_t i = 0; i < n; ++i) {
          BitString y = x;
          y.flip(i);
          if (inst.fitness(y).total < total) improving += p_single;
        }
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            BitString y = x;
            y.flip(i);
            y.flip(j);
            if (inst.fitness(y).total < total) improving += p_pair;
          }
        }
        const double bound = static_cast<double>(k * k) /
                             (2.0 * static_cast<double>(n) * static_cast<double>(n));
        CHECK(improving >= bound - 1e-15);
      }
    }
  }
}

TEST_CASE("trial golden outputs pin the stream layout") {
  const Instance inst = gen_iota(40, 13);
  const TrialResult rls = run_trial(inst, {Algo::Rls, 1}, 2024);
  const TrialResult ea = run_trial(inst, {Algo::Ea, 2}, 2024);
  CHECK(rls == run_trial(inst, {Algo::Rls, 1}, 2024));
  CHECK(ea == run_trial(inst, {Algo::Ea, 2}, 2024));
  // Values recorded from the pinned generator; a change here means the
  // documented stream layout changed.
  CHECK(rls.iterations == 3676);
  CHECK(ea.iterations == 1485);
}
