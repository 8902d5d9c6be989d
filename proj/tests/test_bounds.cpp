#include "doctest.h"
#include "bounds.hpp"
#include "rng.hpp"

#include <cmath>
#include <numbers>

using namespace cle;

TEST_CASE("constant drift: the bound collapses to x0 / delta") {
  const DriftFunction flat = DriftFunction::constant(0.25);
  CHECK(variable_drift_bound(flat, 1.0, 10.0) == doctest::Approx(40.0));
  CHECK(variable_drift_bound(flat, 1.0, 10.0, IntegrationMethod::Quadrature) ==
        doctest::Approx(40.0).epsilon(1e-6));
  CHECK(variable_drift_bound(flat, 3.0, 3.0) == doctest::Approx(12.0));
}

TEST_CASE("modified lemma: closed form equals the hand formula and quadrature") {
  const DriftFunction spec = DriftFunction::modified_lemma(10);
  const double c = 0.055 / (std::numbers::e * 100.0);
  const double hand = (1.0 / c) * (1.0 + 14.0 * (1.0 - std::pow(100.0, -1.0 / 14.0)));
  const double closed = variable_drift_bound(spec, 1.0, 100.0);
  CHECK(closed == doctest::Approx(hand).epsilon(1e-12));
  const double quad =
      variable_drift_bound(spec, 1.0, 100.0, IntegrationMethod::Quadrature);
  CHECK(std::abs(quad - closed) <= 1e-6 * closed);
}

TEST_CASE("general lemma: degenerate integral and quadrature agreement") {
  const DriftFunction unit = DriftFunction::general_lemma(7, 1);
  CHECK(variable_drift_bound(unit, 1.0, 1.0) ==
        doctest::Approx(1.0 / unit.h(1.0)).epsilon(1e-12));

  const DriftFunction spec = DriftFunction::general_lemma(30, 7);
  for (const double x0 : {5.0, 49.0, 2000.0}) {
    const double closed = variable_drift_bound(spec, 0.5, x0);
    const double quad =
        variable_drift_bound(spec, 0.5, x0, IntegrationMethod::Quadrature);
    CHECK(std::abs(quad - closed) <= 1e-6 * closed);
  }
}

TEST_CASE("general lemma h uses the smaller branch on each side of b^2") {
  const DriftFunction spec = DriftFunction::general_lemma(10, 4);
  const double c = 0.025 / (std::numbers::e * 100.0);
  // Below the crossover the curved branch is the minimum.
  CHECK(spec.h(4.0) ==
        doctest::Approx(c * std::pow(4.0, 8.0 / 7.0) / std::pow(4.0, 2.0 / 7.0)));
  CHECK(spec.h(4.0) < c * 4.0);
  // At the crossover both branches meet: 16^{8/7}/4^{2/7} = 16.
  CHECK(spec.h(16.0) == doctest::Approx(c * 16.0));
  // Beyond it the linear branch is the minimum.
  CHECK(spec.h(100.0) == doctest::Approx(c * 100.0));
}

TEST_CASE("multiplicative drift bound") {
  const MultiplicativeDriftBound feas =
      multiplicative_drift_bound(1.0 / (std::numbers::e * 100.0), 100.0, 51.0);
  CHECK(feas.expected ==
        doctest::Approx(std::numbers::e * 100.0 * (std::log(100.0 / 51.0) + 1.0))
            .epsilon(1e-12));
  CHECK(feas.expected == doctest::Approx(454.86).epsilon(1e-3));

  CHECK(multiplicative_drift_bound(0.5, 4.0, 4.0).expected == doctest::Approx(2.0));
  CHECK(MultiplicativeDriftBound::tail_probability(std::log(2.0)) ==
        doctest::Approx(0.5));
  const double t1 = feas.time(1.0);
  CHECK(t1 == doctest::Approx(feas.expected));

  CHECK_THROWS_AS(multiplicative_drift_bound(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(multiplicative_drift_bound(1.0, 1.0, 2.0), std::invalid_argument);
}

TEST_CASE("multiplicative bound is monotone in delta and x0") {
  double prev = multiplicative_drift_bound(0.1, 50.0, 1.0).expected;
  for (const double delta : {0.2, 0.4, 0.8}) {
    const double next = multiplicative_drift_bound(delta, 50.0, 1.0).expected;
    CHECK(next < prev);
    prev = next;
  }
  prev = multiplicative_drift_bound(0.1, 10.0, 1.0).expected;
  for (const double x0 : {20.0, 40.0, 80.0}) {
    const double next = multiplicative_drift_bound(0.1, x0, 1.0).expected;
    CHECK(next > prev);
    prev = next;
  }
}

TEST_CASE("feasibility time bound values") {
  CHECK(feasibility_time_bound(200, 100) == doctest::Approx(915.0807).epsilon(1e-5));
  CHECK(feasibility_time_bound(50, 1) == doctest::Approx(std::numbers::e * 50.0));
  CHECK(feasibility_time_bound(50, 50) ==
        doctest::Approx(std::numbers::e * 50.0 * (std::log(50.0) + 1.0)));
  CHECK_THROWS_AS(feasibility_time_bound(10, 0), std::invalid_argument);
  CHECK_THROWS_AS(feasibility_time_bound(10, 11), std::invalid_argument);
}

TEST_CASE("tabulated drift: validation, exact stepwise integral, monotonicity") {
  CHECK_THROWS_AS(DriftFunction::tabulated({{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(DriftFunction::tabulated({{1.0, 2.0}, {1.0, 3.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DriftFunction::tabulated({{1.0, 2.0}, {2.0, 1.0}}),
                  std::invalid_argument);

  // Step function: h = 1 on [1, 2), h = 2 on [2, 4), h = 4 beyond.
  const DriftFunction steps =
      DriftFunction::tabulated({{1.0, 1.0}, {2.0, 2.0}, {4.0, 4.0}});
  // 1/h(1) + 1*1 + 2*(1/2) + 4*(1/4) = 1 + 1 + 1 + 1
  CHECK(variable_drift_bound(steps, 1.0, 8.0) == doctest::Approx(4.0));
  const double quad =
      variable_drift_bound(steps, 1.0, 8.0, IntegrationMethod::Quadrature);
  CHECK(quad == doctest::Approx(4.0).epsilon(1e-3));
  // Domain below the first entry is rejected.
  CHECK_THROWS(variable_drift_bound(steps, 0.5, 8.0));

  // Pointwise larger h never increases the bound.
  Rng rng(61);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::pair<double, double>> low, high;
    double state = 0.5 + 0.001 * static_cast<double>(rng.below(100));
    double h_low = 0.1 + 0.01 * static_cast<double>(rng.below(10));
    double h_gap = 0.0;
    for (int entries = 0; entries < 6; ++entries) {
      h_gap += 0.01 * static_cast<double>(rng.below(50));
      low.emplace_back(state, h_low);
      high.emplace_back(state, h_low + h_gap);
      state += 0.5 + 0.01 * static_cast<double>(rng.below(200));
      h_low += 0.01 * static_cast<double>(rng.below(30));
    }
    const DriftFunction weak = DriftFunction::tabulated(low);
    const DriftFunction strong = DriftFunction::tabulated(high);
    const double x0 = state + 3.0;
    CHECK(variable_drift_bound(strong, low.front().first, x0) <=
          variable_drift_bound(weak, low.front().first, x0) + 1e-12);
  }
}

TEST_CASE("variable drift rejects bad domains") {
  const DriftFunction spec = DriftFunction::modified_lemma(5);
  CHECK_THROWS_AS(variable_drift_bound(spec, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(variable_drift_bound(spec, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("EA runtime bound evaluates the lemma over the profile") {
  // Finite, positive, and roughly quadratic growth in n.
  double previous = 0.0;
  for (const std::size_t n : {50u, 100u, 200u}) {
    const PotentialProfile profile(gen_onemax_like(n, 10),
                                   PotentialVariant::Modified);
    const double bound = ea_runtime_bound(profile);
    CHECK(bound > 0.0);
    CHECK(std::isfinite(bound));
    if (previous > 0.0) {
      const double ratio = bound / previous;
      CHECK(ratio > 3.5);
      CHECK(ratio < 4.7);
    }
    previous = bound;
  }

  // The general caps dominate the modified ones, so the general bound is
  // never smaller on the same instance.
  for (const std::size_t n : {20u, 50u, 100u}) {
    const Instance inst = gen_onemax_like(n, 8);
    const double general =
        ea_runtime_bound(PotentialProfile(inst, PotentialVariant::General));
    const double modified =
        ea_runtime_bound(PotentialProfile(inst, PotentialVariant::Modified));
    CHECK(general >= modified);
  }

  // Single-bit instance: the evaluator still returns a sane floor.
  const PotentialProfile tiny(gen_iota(1, 1), PotentialVariant::General);
  CHECK(ea_runtime_bound(tiny) >= 1.0);
}
