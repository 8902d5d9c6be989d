#include "potential.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cle {

namespace {

double pow7(double x) {
  const double x2 = x * x;
  return x2 * x2 * x2 * x;
}

}  // namespace

PotentialProfile::PotentialProfile(const Instance& inst, PotentialVariant variant)
    : inst_(inst), variant_(variant) {
  const std::size_t n = inst_.size();
  const std::uint64_t b = inst_.bound();
  if (b == 0)
    throw std::invalid_argument("potential is defined for b >= 1 only");
  if (variant_ == PotentialVariant::Modified &&
      inst_.weight(0) != inst_.weight(b - 1))
    throw std::domain_error(
        "modified potential requires the b smallest weights to be identical");

  gamma_.resize(n);
  g_.resize(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::uint64_t j = pos + 1;
    if (j <= b) {
      gamma_[pos] = 1.0;
    } else {
      const auto excess = static_cast<double>(j - b);
      gamma_[pos] = variant_ == PotentialVariant::General
                        ? 75.0 * static_cast<double>(b) * pow7(excess)
                        : 8.0 * pow7(excess);
    }
  }

  g_[0] = 1.0;
  for (std::size_t pos = 1; pos < n; ++pos) {
    const std::uint64_t w_prev = inst_.weight(pos - 1);
    const std::uint64_t w_here = inst_.weight(pos);
    if (w_here == w_prev) {
      g_[pos] = g_[pos - 1];  // same block
    } else if (w_prev == 0) {
      g_[pos] = gamma_[pos];
    } else {
      const double grown =
          g_[pos - 1] * (static_cast<double>(w_here) / static_cast<double>(w_prev));
      g_[pos] = std::min(gamma_[pos], grown);
    }
  }

  block_of_.resize(n);
  for (std::size_t pos = 0; pos < n;) {
    std::size_t end = pos + 1;
    while (end < n && inst_.weight(end) == inst_.weight(pos)) ++end;
    PotentialBlock block{pos, end, g_[pos] == gamma_[pos], 0};
    block.kappa = block.capped || blocks_.empty() ? blocks_.size()
                                                  : blocks_.back().kappa;
    for (std::size_t i = pos; i < end; ++i) block_of_[i] = blocks_.size();
    blocks_.push_back(block);
    pos = end;
  }

  g_max_ = 0.0;
  for (double gj : g_) g_max_ += gj;

  if (n <= 16) {
    // Exact: scan every feasible non-optimal point for the smallest positive
    // potential value.
    double best = 1.0;
    bool found = false;
    const std::uint32_t limit = 1u << n;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      const auto ones = static_cast<std::uint64_t>(std::popcount(mask));
      if (ones < b) continue;
      std::uint64_t obj = 0;
      double val = 0.0;
      for (std::size_t pos = 0; pos < n; ++pos) {
        const bool bit = (mask >> pos) & 1u;
        if (bit) obj += inst_.weight(pos);
        if (pos >= b ? bit : !bit) val += (pos >= b ? g_[pos] : -g_[pos]);
      }
      if (obj == inst_.f_opt() || val <= 0.0) continue;
      if (!found || val < best) best = val;
      found = true;
    }
    s_min_pos_ = best;
  } else {
    double best = 1.0;
    for (const PotentialBlock& block : blocks_) {
      if (block.begin >= b && g_[block.begin] > 1.0)
        best = std::min(best, g_[block.begin] - 1.0);
    }
    s_min_pos_ = best;
  }
}

double PotentialProfile::value(const BitString& x) const {
  if (x.size() != inst_.size())
    throw std::invalid_argument("bit string length does not match the instance");
  const std::uint64_t b = inst_.bound();
  double val = 0.0;
  for (std::size_t pos = 0; pos < x.size(); ++pos) {
    if (pos >= b) {
      if (x.test(pos)) val += g_[pos];
    } else if (!x.test(pos)) {
      val -= g_[pos];
    }
  }
  return val;
}

double drift_lower_bound(const PotentialProfile& profile, double potential) {
  if (potential < 0.0)
    throw std::invalid_argument("drift bound is defined for potential >= 0");
  if (potential == 0.0) return 0.0;
  const auto n = static_cast<double>(profile.instance().size());
  const auto b = static_cast<double>(profile.instance().bound());
  const double scale = 1.0 / (std::numbers::e * n * n);
  if (profile.variant() == PotentialVariant::General) {
    const double curved =
        std::pow(potential, 8.0 / 7.0) / std::pow(b, 2.0 / 7.0);
    return 0.025 * scale * std::min(curved, potential);
  }
  return 0.055 * scale * std::pow(potential, 15.0 / 14.0);
}

double exact_rls_drift(const PotentialProfile& profile, const BitString& x) {
  const Instance& inst = profile.instance();
  if (!inst.feasible(x))
    throw std::invalid_argument("exact RLS drift requires a feasible point");
  const std::size_t n = inst.size();
  const std::uint64_t objective = inst.objective(x);
  const std::uint64_t current_total = inst.total_of(objective, x.ones());

  // g(x) - g(x') for flipping `pos`: a vanishing one-bit raises the drift by
  // g, a new one-bit lowers it, on either side of the boundary.
  const auto flip_gain = [&](std::size_t pos) {
    return x.test(pos) ? profile.g(pos) : -profile.g(pos);
  };
  const auto flip_weight = [&](std::size_t pos, std::uint64_t& gained,
                               std::uint64_t& lost, std::int64_t& dones) {
    if (x.test(pos)) {
      lost += inst.weight(pos);
      --dones;
    } else {
      gained += inst.weight(pos);
      ++dones;
    }
  };
  const auto accepted = [&](std::uint64_t gained, std::uint64_t lost,
                            std::int64_t dones) {
    const std::uint64_t next_obj = objective + gained - lost;
    const auto next_ones =
        static_cast<std::size_t>(static_cast<std::int64_t>(x.ones()) + dones);
    return inst.total_of(next_obj, next_ones) <= current_total;
  };

  const double p_single = 1.0 / (2.0 * static_cast<double>(n));
  double drift = 0.0;
  for (std::size_t pos = 0; pos < n; ++pos) {
    std::uint64_t gained = 0, lost = 0;
    std::int64_t dones = 0;
    flip_weight(pos, gained, lost, dones);
    if (accepted(gained, lost, dones)) drift += p_single * flip_gain(pos);
  }
  if (n >= 2) {
    const double p_pair = 1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        std::uint64_t gained = 0, lost = 0;
        std::int64_t dones = 0;
        flip_weight(i, gained, lost, dones);
        flip_weight(j, gained, lost, dones);
        if (accepted(gained, lost, dones))
          drift += p_pair * (flip_gain(i) + flip_gain(j));
      }
    }
  }
  return drift;
}

DriftEstimate estimate_ea_drift(const PotentialProfile& profile,
                                const BitString& x,
                                std::uint32_t rate_numerator,
                                std::uint64_t samples, Rng& rng) {
  const Instance& inst = profile.instance();
  if (samples < 1) throw std::invalid_argument("drift estimation needs samples >= 1");
  if (!inst.feasible(x))
    throw std::invalid_argument("EA drift estimation requires a feasible point");
  const std::size_t n = inst.size();
  const std::uint64_t objective = inst.objective(x);
  const std::uint64_t current_total = inst.total_of(objective, x.ones());
  const detail::MutationSampler sampler(n, rate_numerator);

  std::vector<std::uint32_t> flips;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    flips.clear();
    sampler.sample(rng, flips);
    std::uint64_t gained = 0, lost = 0;
    std::int64_t dones = 0;
    double gain = 0.0;
    for (std::uint32_t pos : flips) {
      if (x.test(pos)) {
        lost += inst.weight(pos);
        --dones;
        gain += profile.g(pos);
      } else {
        gained += inst.weight(pos);
        ++dones;
        gain -= profile.g(pos);
      }
    }
    const std::uint64_t next_obj = objective + gained - lost;
    const auto next_ones =
        static_cast<std::size_t>(static_cast<std::int64_t>(x.ones()) + dones);
    const double d =
        inst.total_of(next_obj, next_ones) <= current_total ? gain : 0.0;
    sum += d;
    sum_sq += d * d;
  }

  const auto count = static_cast<double>(samples);
  const double mean = sum / count;
  double std_error = 0.0;
  if (samples > 1) {
    const double variance =
        std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0));
    std_error = std::sqrt(variance / count);
  }
  return {mean, std_error, samples};
}

}  // namespace cle
