#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cle {

namespace {

constexpr double kQuadratureRelTol = 1e-6;
constexpr std::size_t kQuadraturePanelCap = 1'000'000;

double lemma_scale(const DriftFunction& spec) {
  const auto n = static_cast<double>(spec.n);
  const double c =
      (spec.kind == DriftFunction::Kind::GeneralLemma ? 0.025 : 0.055) /
      (std::numbers::e * n * n);
  return c;
}

struct Simpson {
  const DriftFunction& spec;
  std::size_t panels = 0;

  double f(double s) const { return 1.0 / spec.h(s); }

  double run(double a, double b, double rel_tol) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // Two passes: the first estimate sets the absolute error budget for
    // the second. The relative target applies to the true integral, not to
    // the single-panel seed value.
    const double coarse =
        refine(a, b, fa, fm, fb, whole,
               std::max(rel_tol * std::abs(whole), 1e-300), 0);
    panels = 0;
    return refine(a, b, fa, fm, fb, whole,
                  std::max(0.25 * rel_tol * std::abs(coarse), 1e-300), 0);
  }

  double refine(double a, double b, double fa, double fm, double fb,
                double whole, double eps, int depth) {
    const double m = 0.5 * (a + b);
    const double fl = f(0.5 * (a + m));
    const double fr = f(0.5 * (m + b));
    const double left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    const double split = left + right;
    ++panels;
    if (depth >= 48 || panels >= kQuadraturePanelCap ||
        std::abs(split - whole) <= 15.0 * eps)
      return split + (split - whole) / 15.0;
    return refine(a, m, fa, fl, fm, left, eps * 0.5, depth + 1) +
           refine(m, b, fm, fr, fb, right, eps * 0.5, depth + 1);
  }
};

}  // namespace

DriftFunction DriftFunction::general_lemma(std::size_t n, std::uint64_t b) {
  if (n == 0 || b == 0 || b > n)
    throw std::invalid_argument("general drift lemma requires 1 <= b <= n");
  DriftFunction spec;
  spec.kind = Kind::GeneralLemma;
  spec.n = n;
  spec.b = b;
  return spec;
}

DriftFunction DriftFunction::modified_lemma(std::size_t n) {
  if (n == 0) throw std::invalid_argument("modified drift lemma requires n >= 1");
  DriftFunction spec;
  spec.kind = Kind::ModifiedLemma;
  spec.n = n;
  return spec;
}

DriftFunction DriftFunction::constant(double delta) {
  if (!(delta > 0.0))
    throw std::invalid_argument("constant drift requires delta > 0");
  DriftFunction spec;
  spec.kind = Kind::ConstantDelta;
  spec.delta = delta;
  return spec;
}

DriftFunction DriftFunction::tabulated(
    std::vector<std::pair<double, double>> table) {
  if (table.empty()) throw std::invalid_argument("tabulated drift needs entries");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!(table[i].second > 0.0))
      throw std::invalid_argument("tabulated drift must be strictly positive");
    if (i > 0 && !(table[i].first > table[i - 1].first))
      throw std::invalid_argument("tabulated states must be strictly increasing");
    if (i > 0 && table[i].second < table[i - 1].second)
      throw std::invalid_argument("tabulated drift must be nondecreasing");
  }
  DriftFunction spec;
  spec.kind = Kind::Tabulated;
  spec.table = std::move(table);
  return spec;
}

double DriftFunction::h(double s) const {
  switch (kind) {
    case Kind::GeneralLemma: {
      const double curved =
          std::pow(s, 8.0 / 7.0) / std::pow(static_cast<double>(b), 2.0 / 7.0);
      return lemma_scale(*this) * std::min(curved, s);
    }
    case Kind::ModifiedLemma:
      return lemma_scale(*this) * std::pow(s, 15.0 / 14.0);
    case Kind::ConstantDelta:
      return delta;
    case Kind::Tabulated: {
      if (s < table.front().first)
        throw std::domain_error("state below the tabulated drift domain");
      auto it = std::upper_bound(
          table.begin(), table.end(), s,
          [](double value, const auto& entry) { return value < entry.first; });
      return std::prev(it)->second;
    }
  }
  throw std::logic_error("unreachable");
}

double variable_drift_bound(const DriftFunction& spec, double s_min, double x0,
                            IntegrationMethod method) {
  if (!(s_min > 0.0) || !(x0 >= s_min))
    throw std::invalid_argument("variable drift requires 0 < s_min <= x0");
  if (!(spec.h(s_min) > 0.0) || !(spec.h(x0) > 0.0))
    throw std::invalid_argument("drift function must be positive on [s_min, x0]");

  const double head = s_min / spec.h(s_min);

  if (method == IntegrationMethod::Quadrature) {
    Simpson simpson{spec};
    return head + simpson.run(s_min, x0, kQuadratureRelTol);
  }

  switch (spec.kind) {
    case DriftFunction::Kind::ConstantDelta:
      return x0 / spec.delta;
    case DriftFunction::Kind::ModifiedLemma: {
      const double c = lemma_scale(spec);
      return head + 14.0 / c *
                        (std::pow(s_min, -1.0 / 14.0) - std::pow(x0, -1.0 / 14.0));
    }
    case DriftFunction::Kind::GeneralLemma: {
      // h follows the curved branch up to b^2 and the linear branch beyond.
      const double c = lemma_scale(spec);
      const auto b = static_cast<double>(spec.b);
      const double crossover = b * b;
      double integral = 0.0;
      const double lo = s_min;
      const double hi = x0;
      if (lo < crossover) {
        const double top = std::min(hi, crossover);
        integral += std::pow(b, 2.0 / 7.0) / c * 7.0 *
                    (std::pow(lo, -1.0 / 7.0) - std::pow(top, -1.0 / 7.0));
      }
      if (hi > crossover) {
        const double bottom = std::max(lo, crossover);
        integral += (std::log(hi) - std::log(bottom)) / c;
      }
      return head + integral;
    }
    case DriftFunction::Kind::Tabulated: {
      double integral = 0.0;
      for (std::size_t i = 0; i < spec.table.size(); ++i) {
        const double seg_lo = std::max(spec.table[i].first, s_min);
        const double seg_hi = i + 1 < spec.table.size()
                                  ? std::min(spec.table[i + 1].first, x0)
                                  : x0;
        if (seg_hi > seg_lo)
          integral += (seg_hi - seg_lo) / spec.table[i].second;
      }
      return head + integral;
    }
  }
  throw std::logic_error("unreachable");
}

double MultiplicativeDriftBound::time(double r) const {
  return (std::log(x0 / s_min) + r) / delta;
}

double MultiplicativeDriftBound::tail_probability(double r) {
  return std::exp(-r);
}

MultiplicativeDriftBound multiplicative_drift_bound(double delta, double x0,
                                                    double s_min) {
  if (!(delta > 0.0))
    throw std::invalid_argument("multiplicative drift requires delta > 0");
  if (!(s_min > 0.0) || !(x0 >= s_min))
    throw std::invalid_argument("multiplicative drift requires 0 < s_min <= x0");
  const double expected = (std::log(x0 / s_min) + 1.0) / delta;
  return {delta, x0, s_min, expected};
}

double feasibility_time_bound(std::size_t n, std::uint64_t b) {
  if (n == 0 || b == 0 || b > n)
    throw std::invalid_argument("feasibility bound requires 1 <= b <= n");
  const auto nd = static_cast<double>(n);
  const auto reachable = static_cast<double>(n - b + 1);
  return std::numbers::e * nd * (std::log(nd / reachable) + 1.0);
}

double ea_runtime_bound(const PotentialProfile& profile) {
  const Instance& inst = profile.instance();
  const DriftFunction spec =
      profile.variant() == PotentialVariant::General
          ? DriftFunction::general_lemma(inst.size(), inst.bound())
          : DriftFunction::modified_lemma(inst.size());
  const double s_min = profile.s_min_pos();
  const double x0 = std::max(profile.g_max(), s_min);
  return variable_drift_bound(spec, s_min, x0);
}

}  // namespace cle
