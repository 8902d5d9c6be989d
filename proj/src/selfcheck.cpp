#include "selfcheck.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "bounds.hpp"
#include "harness.hpp"
#include "oracle.hpp"
#include "potential.hpp"

namespace cle {

namespace {

struct Checker {
  CheckReport report;
  std::string context;

  void expect(bool condition, const std::string& message) {
    ++report.checks;
    if (!condition) report.failures.push_back(context + ": " + message);
  }
};

BitString mask_to_bits(std::size_t n, std::uint32_t mask) {
  BitString x(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1u) x.set(i, true);
  return x;
}

void check_instance_basics(Checker& check, const Instance& inst, Rng& rng) {
  const std::size_t n = inst.size();
  const std::uint64_t b = inst.bound();

  for (std::size_t i = 1; i < n; ++i)
    check.expect(inst.weight(i - 1) <= inst.weight(i), "weights not ascending");

  std::uint64_t prefix = 0;
  for (std::uint64_t i = 0; i < b; ++i) prefix += inst.weight(i);
  check.expect(prefix == inst.f_opt(), "f_opt is not the sum of the b smallest weights");

  // Permutation invariance of construction.
  std::vector<std::uint64_t> shuffled = inst.weights();
  for (std::size_t i = n; i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
  const Instance rebuilt(shuffled, b);
  check.expect(rebuilt.weights() == inst.weights() && rebuilt.f_opt() == inst.f_opt(),
               "construction is not permutation invariant");

  if (n <= 10) {
    // Brute-force optimum and penalty dominance.
    std::uint64_t best_feasible = ~0ull;
    std::uint64_t max_feasible_total = 0;
    std::uint64_t min_infeasible_total = ~0ull;
    bool any_infeasible = false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const BitString x = mask_to_bits(n, mask);
      const Fitness f = inst.fitness(x);
      if (inst.feasible(x)) {
        best_feasible = std::min(best_feasible, f.objective);
        max_feasible_total = std::max(max_feasible_total, f.total);
        check.expect(f.penalty == 0, "feasible point has a penalty");
      } else {
        any_infeasible = true;
        min_infeasible_total = std::min(min_infeasible_total, f.total);
        check.expect(f.penalty > 0, "infeasible point lacks a penalty");
      }
    }
    check.expect(best_feasible == inst.f_opt(), "f_opt does not match brute force");
    if (any_infeasible)
      check.expect(max_feasible_total < min_infeasible_total,
                   "penalty does not dominate feasible totals");
    BitString profile_opt(n);
    for (std::uint64_t i = 0; i < b; ++i) profile_opt.set(i, true);
    check.expect(inst.optimal(profile_opt), "prefix profile is not optimal");
  }

  // Flipping a zero to one on a feasible point never lowers the total.
  BitString x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, rng.coin());
  for (std::uint64_t i = 0; i < b; ++i) x.set(i, true);  // force feasibility
  const std::uint64_t before = inst.fitness(x).total;
  for (std::size_t i = 0; i < n; ++i) {
    if (x.test(i)) continue;
    BitString y = x;
    y.set(i, true);
    check.expect(inst.fitness(y).total >= before,
                 "raising a zero lowered a feasible total");
    break;
  }
}

void check_trials(Checker& check, const Instance& inst, std::uint64_t seed) {
  for (const Algo kind : {Algo::Rls, Algo::Ea}) {
    const AlgorithmSpec algo{kind, 1};
    const TrialResult first = run_trial(inst, algo, seed, 20'000);
    const TrialResult second = run_trial(inst, algo, seed, 20'000);
    check.expect(first == second, "trial is not deterministic");
    if (!first.hit_cap)
      check.expect(first.feasibility_hit <= first.iterations,
                   "feasibility after the optimum");
  }

  // Trajectory invariants along explicit steps.
  Rng rng(seed ^ 0x5eedu);
  BitString x = uniform_start(inst.size(), rng);
  std::uint64_t total = inst.fitness(x).total;
  bool was_feasible = inst.feasible(x);
  bool was_tight = inst.tight(x);
  for (int step = 0; step < 300; ++step) {
    auto [next, accepted] = rls_step(inst, x, rng);
    const std::uint64_t next_total = inst.fitness(next).total;
    check.expect(next_total <= total, "RLS trajectory fitness increased");
    if (was_feasible)
      check.expect(inst.feasible(next), "RLS trajectory left the feasible region");
    if (was_tight)
      check.expect(next.ones() == x.ones(),
                   "RLS changed the one-count after tightness");
    x = std::move(next);
    total = next_total;
    was_feasible = was_feasible || inst.feasible(x);
    was_tight = was_tight || inst.tight(x);
  }
}

void check_potential(Checker& check, const Instance& inst, Rng& rng) {
  const std::size_t n = inst.size();
  const std::uint64_t b = inst.bound();
  if (b == 0) return;
  const PotentialProfile profile(inst, PotentialVariant::General);

  check.expect(profile.g(0) == 1.0, "g_1 is not 1");
  for (std::size_t pos = 0; pos < n; ++pos) {
    check.expect(profile.g(pos) <= profile.gamma(pos), "g exceeds gamma");
    if (pos > 0)
      check.expect(profile.g(pos - 1) <= profile.g(pos), "g decreases");
    if (pos + 1 < b)
      check.expect(profile.g(pos) == 1.0, "g below the bound is not 1");
  }
  for (const PotentialBlock& block : profile.blocks()) {
    for (std::size_t pos = block.begin + 1; pos < block.end; ++pos)
      check.expect(profile.g(pos) == profile.g(block.begin),
                   "g varies within a block");
    const PotentialBlock& capping = profile.blocks()[block.kappa];
    check.expect(block.kappa <= profile.block_of(block.begin),
                 "kappa points left of its block");
    check.expect(capping.capped && profile.g(capping.begin) == profile.gamma(capping.begin),
                 "kappa block is not capped");
  }
  check.expect(profile.blocks().front().capped, "block 1 is not capped");

  if (n <= 10) {
    const bool degenerate =
        b < n && inst.weight(0) < inst.weight(b - 1) &&
        inst.weight(b - 1) == inst.weight(b);
    bool found_zero_violation = false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const BitString x = mask_to_bits(n, mask);
      if (!inst.feasible(x)) continue;
      const double value = profile.value(x);
      check.expect(value >= 0.0, "negative potential on a feasible point");
      if (inst.optimal(x)) {
        check.expect(value == 0.0, "optimal point has nonzero potential");
      } else if (value == 0.0) {
        found_zero_violation = true;
      } else {
        check.expect(value >= profile.s_min_pos() - 1e-12,
                     "positive potential below s_min_pos");
      }
    }
    // Zero potential at a non-optimal point happens exactly on instances
    // with w_1 < w_b = w_{b+1}.
    check.expect(found_zero_violation == degenerate,
                 degenerate ? "degenerate instance without a potential-zero witness"
                            : "potential is zero at a non-optimal point");
  }

  // RLS never accepts a potential-increasing move, so the exact drift is
  // nonnegative; it vanishes at the optimum.
  BitString opt(n);
  for (std::uint64_t i = 0; i < b; ++i) opt.set(i, true);
  check.expect(exact_rls_drift(profile, opt) == 0.0,
               "nonzero RLS drift at the optimum");
  for (int trial = 0; trial < 5; ++trial) {
    BitString x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, rng.coin());
    for (std::uint64_t i = 0; i < b; ++i) x.set(i, true);
    check.expect(exact_rls_drift(profile, x) >= 0.0, "negative exact RLS drift");
  }
}

void check_oracle(Checker& check, const Instance& inst) {
  if (inst.size() > 8) return;
  for (const Algo kind : {Algo::Rls, Algo::Ea}) {
    const AlgorithmSpec algo{kind, 1};
    const auto rows = transition_distribution(
        inst, algo, kind == Algo::Rls ? 0u : (1u << inst.size()) - 1u);
    double sum = 0.0;
    for (const auto& [state, prob] : rows) sum += prob;
    check.expect(std::abs(sum - 1.0) <= 1e-12,
                 "transition probabilities do not sum to 1");
  }
}

}  // namespace

CheckReport run_invariant_checks(std::uint64_t seed, std::uint32_t instances,
                                 std::uint32_t max_n) {
  Checker check;
  check.report.seed = seed;
  check.report.instances = instances;

  Rng rng(mix64(seed + 0xC1EC1Eull));
  static constexpr std::uint64_t kWeightCaps[] = {1, 2, 5, 10, 100, 1'000'000};

  for (std::uint32_t i = 0; i < instances; ++i) {
    const std::size_t n = 1 + rng.below(max_n);
    const std::uint64_t b = rng.below(n + 1);
    Instance inst = [&]() -> Instance {
      switch (rng.below(4)) {
        case 0: return gen_iota(n, b);
        case 1: return gen_onemax_like(n, std::max<std::uint64_t>(1, b));
        case 2:
          if (n >= 4 && n % 4 == 0) return gen_lower_bound(n);
          [[fallthrough]];
        default:
          return gen_random(n, b, kWeightCaps[rng.below(std::size(kWeightCaps))],
                            rng.next_u64());
      }
    }();

    std::ostringstream context;
    context << "instance #" << i << " (n=" << inst.size()
            << ", B=" << inst.bound() << ", w_max=" << inst.w_max() << ")";
    check.context = context.str();

    check_instance_basics(check, inst, rng);
    check_trials(check, inst, rng.next_u64());
    check_potential(check, inst, rng);
    check_oracle(check, inst);
  }
  return check.report;
}

}  // namespace cle
