#include "doctest.h"
#include "helpers.hpp"
#include "instance.hpp"
#include "rng.hpp"

#include <limits>
#include <stdexcept>

using namespace cle;
using cle::test::BruteForce;
using cle::test::from_mask;
using cle::test::ones_at_1based;

TEST_CASE("construction sorts and precomputes the optimum") {
  const Instance inst({3, 1, 2}, 2);
  CHECK(inst.weights() == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(inst.f_opt() == 3);
  CHECK(inst.w_max() == 3);
  CHECK(inst.penalty_unit() == 3 * 3 + 1);

  CHECK(gen_iota(10, 3).f_opt() == 6);
  CHECK_THROWS_AS(Instance({5}, 2), std::invalid_argument);
  CHECK_THROWS_AS(Instance({}, 0), std::invalid_argument);
}

TEST_CASE("construction rejects weights that could overflow fitness values") {
  const std::uint64_t huge = std::numeric_limits<std::uint64_t>::max() / 2;
  CHECK_THROWS_AS(Instance({huge, huge}, 1), std::overflow_error);
  // The penalty side overflows even when n * w_max + sum does not:
  // b * (n * w_max + 1) with every weight large and b = n.
  const std::uint64_t big = std::numeric_limits<std::uint64_t>::max() / 40;
  CHECK_THROWS_AS(Instance(std::vector<std::uint64_t>(10, big), 10),
                  std::overflow_error);
  CHECK_NOTHROW(Instance({0, 0, 0}, 3));
}

TEST_CASE("fitness matches the worked examples") {
  const Instance inst({1, 2, 3, 4}, 2);

  const Fitness high = inst.fitness(ones_at_1based(4, {4}));
  CHECK(high.objective == 4);
  CHECK(high.penalty == 17);  // (2 - 1) * (4 * 4 + 1)
  CHECK(high.total == 21);

  const Fitness opt = inst.fitness(ones_at_1based(4, {1, 2}));
  CHECK(opt.penalty == 0);
  CHECK(opt.total == 3);

  const Fitness full = inst.fitness(BitString::all_ones(4));
  CHECK(full.penalty == 0);
  CHECK(full.total == 10);
}

TEST_CASE("feasibility, tightness and optimality predicates") {
  const Instance inst({1, 2, 3, 4}, 2);

  const BitString swapped = ones_at_1based(4, {1, 3});
  CHECK(inst.feasible(swapped));
  CHECK(inst.tight(swapped));
  CHECK_FALSE(inst.optimal(swapped));  // objective 4 > 3

  CHECK_FALSE(inst.feasible(BitString(4)));
  CHECK(inst.optimal(ones_at_1based(4, {1, 2})));
}

TEST_CASE("generators produce the documented families") {
  const Instance iota = gen_iota(4, 2);
  CHECK(iota.weights() == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK(iota.f_opt() == 3);
  CHECK(gen_iota(10, 0).f_opt() == 0);
  CHECK(gen_iota(10, 0).optimal(BitString(10)));
  CHECK(gen_iota(100, 33).f_opt() == 561);

  const Instance hard = gen_lower_bound(8);
  CHECK(hard.bound() == 2);
  CHECK(hard.weights() ==
        std::vector<std::uint64_t>{1000, 1000, 1001, 1001, 1001, 1001, 1001, 1001});
  CHECK(gen_lower_bound(4).bound() == 1);
  CHECK_THROWS_AS(gen_lower_bound(6), std::invalid_argument);

  CHECK(gen_onemax_like(5, 3).weights() ==
        std::vector<std::uint64_t>{1, 1, 1, 2, 3});
  CHECK(gen_onemax_like(3, 3).weights() == std::vector<std::uint64_t>{1, 1, 1});

  const Instance r1 = gen_random(6, 2, 10, 1);
  const Instance r2 = gen_random(6, 2, 10, 1);
  CHECK(r1.weights() == r2.weights());
  for (std::uint64_t w : r1.weights()) {
    CHECK(w >= 1);
    CHECK(w <= 10);
  }
}

TEST_CASE("construction is permutation invariant") {
  Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 1 + rng.below(12);
    const std::uint64_t b = rng.below(n + 1);
    Instance inst = gen_random(n, b, 50, rng.next_u64());
    std::vector<std::uint64_t> shuffled = inst.weights();
    for (std::size_t i = n; i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
    const Instance rebuilt(shuffled, b);
    CHECK(rebuilt.weights() == inst.weights());
    CHECK(rebuilt.f_opt() == inst.f_opt());
    CHECK(rebuilt.to_json() == inst.to_json());
  }
}

TEST_CASE("penalty dominance and brute-force optimum on small instances") {
  Rng rng(11);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 1 + rng.below(12);
    const std::uint64_t b = rng.below(n + 1);
    const Instance inst = gen_random(n, b, 1 + rng.below(20), rng.next_u64());
    const BruteForce brute(inst);
    CHECK(brute.min_feasible_objective == inst.f_opt());
    if (brute.any_infeasible)
      CHECK(brute.max_feasible_total < brute.min_infeasible_total);
    // The prefix profile is always a minimizer.
    BitString prefix(n);
    for (std::uint64_t i = 0; i < b; ++i) prefix.set(i, true);
    CHECK(inst.optimal(prefix));
  }
  // Largest size the exhaustive check is specified for.
  for (const std::uint64_t b : {1, 7, 16}) {
    const Instance inst = gen_random(16, b, 40, 9000 + b);
    CHECK(BruteForce(inst).min_feasible_objective == inst.f_opt());
  }
}

TEST_CASE("raising a zero bit never lowers a feasible total") {
  const Instance inst = gen_random(12, 5, 30, 3);
  Rng rng(5);
  for (int round = 0; round < 30; ++round) {
    BitString x(12);
    for (std::size_t i = 0; i < 12; ++i) x.set(i, rng.coin());
    for (std::uint64_t i = 0; i < 5; ++i) x.set(i, true);
    const std::uint64_t before = inst.fitness(x).total;
    for (std::size_t i = 0; i < 12; ++i) {
      if (x.test(i)) continue;
      BitString y = x;
      y.set(i, true);
      CHECK(inst.fitness(y).total >= before);
      CHECK(inst.feasible(y));
    }
  }
}

TEST_CASE("JSON round trip") {
  const Instance inst({4, 1, 9, 9}, 3);
  const Instance back = Instance::from_json(inst.to_json());
  CHECK(back.weights() == inst.weights());
  CHECK(back.bound() == inst.bound());
  CHECK(back.f_opt() == inst.f_opt());

  CHECK(Instance::from_json(R"({"n":3,"B":1,"weights":[5,2,2]})").weights() ==
        std::vector<std::uint64_t>{2, 2, 5});
  CHECK_THROWS(Instance::from_json(R"({"n":4,"B":1,"weights":[1,2]})"));
  CHECK_THROWS(Instance::from_json("not json"));
  CHECK_THROWS_AS(Instance::from_json(R"({"B":1,"weights":[-3,2]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(Instance::from_json(R"({"B":-1,"weights":[3,2]})"),
                  std::invalid_argument);
}

TEST_CASE("bit string parsing and printing use the msb-first convention") {
  const BitString x = ones_at_1based(4, {1, 3});
  CHECK(x.msb_string() == "0101");
  CHECK(BitString::parse_msb("0101") == x);
  CHECK(BitString::parse_msb("0101").ones() == 2);
  CHECK_THROWS_AS(BitString::parse_msb("01x1"), std::invalid_argument);
  CHECK(from_mask(4, 0b0101u) == x);
}
