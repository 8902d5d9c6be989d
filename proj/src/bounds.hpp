#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "potential.hpp"

namespace cle {

// Drift function h for the hitting-time evaluators. The two lemma kinds are
// the state-wise bounds of the potential module; ConstantDelta is h = delta;
// Tabulated is a right-open step function over user-supplied (state, h)
// pairs with strictly increasing states and positive, nondecreasing h.
struct DriftFunction {
  enum class Kind { GeneralLemma, ModifiedLemma, ConstantDelta, Tabulated };

  Kind kind;
  std::size_t n = 0;
  std::uint64_t b = 0;
  double delta = 0.0;
  std::vector<std::pair<double, double>> table;

  static DriftFunction general_lemma(std::size_t n, std::uint64_t b);
  static DriftFunction modified_lemma(std::size_t n);
  static DriftFunction constant(double delta);
  static DriftFunction tabulated(std::vector<std::pair<double, double>> table);

  double h(double s) const;
};

enum class IntegrationMethod { ClosedForm, Quadrature };

// Variable drift theorem evaluated numerically:
//   s_min / h(s_min) + integral_{s_min}^{x0} 1/h(s) ds.
// ClosedForm uses the exact antiderivatives (power laws for the lemma
// kinds, interval sums for tabulated h); Quadrature uses adaptive Simpson
// with relative tolerance 1e-6 and a 1e6 panel cap.
double variable_drift_bound(const DriftFunction& spec, double s_min, double x0,
                            IntegrationMethod method = IntegrationMethod::ClosedForm);

// Multiplicative drift theorem: expected hitting time and tail bound.
struct MultiplicativeDriftBound {
  double delta;
  double x0;
  double s_min;
  double expected;  // (ln(x0/s_min) + 1) / delta

  // Time horizon whose overshoot probability is tail_probability(r).
  double time(double r) const;
  static double tail_probability(double r);  // e^{-r}
};

MultiplicativeDriftBound multiplicative_drift_bound(double delta, double x0,
                                                    double s_min);

// Expected steps to reach the feasible region from anywhere:
// e * n * (ln(n / (n - b + 1)) + 1), the explicit constant behind the
// O(n log(n/(n-B))) feasibility lemma. Requires 1 <= b <= n.
double feasibility_time_bound(std::size_t n, std::uint64_t b);

// The runtime bound assembled from the variant's drift lemma, with the
// profile's computed s_min_pos and g_max standing in for the asymptotic
// limits.
double ea_runtime_bound(const PotentialProfile& profile);

}  // namespace cle
