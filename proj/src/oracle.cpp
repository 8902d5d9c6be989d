#include "oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cle {

namespace {

struct StateTable {
  std::size_t n;
  std::uint32_t count;  // 2^n
  std::vector<std::uint64_t> total;
  std::vector<bool> optimal;

  explicit StateTable(const Instance& inst)
      : n(inst.size()), count(1u << inst.size()) {
    std::vector<std::uint64_t> objective(count);
    total.resize(count);
    optimal.resize(count);
    objective[0] = 0;
    for (std::uint32_t mask = 1; mask < count; ++mask) {
      const auto low = static_cast<std::uint32_t>(std::countr_zero(mask));
      objective[mask] = objective[mask & (mask - 1)] + inst.weight(low);
    }
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      const auto ones = static_cast<std::uint64_t>(std::popcount(mask));
      total[mask] = inst.total_of(objective[mask], ones);
      optimal[mask] = ones >= inst.bound() && objective[mask] == inst.f_opt();
    }
  }
};

void check_caps(const Instance& inst, AlgorithmSpec algo) {
  const std::size_t cap =
      algo.kind == Algo::Rls ? kOracleMaxBitsRls : kOracleMaxBitsEa;
  if (inst.size() > cap)
    throw std::length_error("instance too large for the exact oracle");
  if (algo.kind == Algo::Ea &&
      (algo.rate_numerator == 0 || algo.rate_numerator > inst.size()))
    throw std::invalid_argument("mutation rate numerator must satisfy 1 <= c <= n");
}

// Calls visit(successor, probability) for every move of the step operation;
// rejected moves are reported as self-loops.
template <typename Visit>
void for_each_move(const StateTable& table, AlgorithmSpec algo,
                   std::uint32_t state, Visit&& visit) {
  const std::size_t n = table.n;
  const std::uint64_t current = table.total[state];
  if (algo.kind == Algo::Rls) {
    const double p_single = 1.0 / (2.0 * static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t next = state ^ (1u << i);
      visit(table.total[next] <= current ? next : state, p_single);
    }
    if (n < 2) {
      visit(state, 0.5);  // pair branch impossible: counted no-op
      return;
    }
    const double p_pair =
        1.0 / (static_cast<double>(n) * static_cast<double>(n - 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::uint32_t next = state ^ (1u << i) ^ (1u << j);
        visit(table.total[next] <= current ? next : state, p_pair);
      }
    }
    return;
  }

  const double p =
      static_cast<double>(algo.rate_numerator) / static_cast<double>(n);
  std::vector<double> flip_prob(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    flip_prob[k] = std::pow(p, static_cast<double>(k)) *
                   std::pow(1.0 - p, static_cast<double>(n - k));
  for (std::uint32_t mask = 0; mask < table.count; ++mask) {
    const double prob = flip_prob[static_cast<std::size_t>(std::popcount(mask))];
    if (prob == 0.0) continue;
    const std::uint32_t next = state ^ mask;
    visit(table.total[next] <= current ? next : state, prob);
  }
}

// Gaussian elimination with partial pivoting; a is row-major size*size.
void solve_dense(std::vector<double>& a, std::vector<double>& rhs,
                 std::size_t size) {
  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    double best = std::abs(a[col * size + col]);
    for (std::size_t row = col + 1; row < size; ++row) {
      const double mag = std::abs(a[row * size + col]);
      if (mag > best) {
        best = mag;
        pivot = row;
      }
    }
    if (best == 0.0) throw std::runtime_error("singular hitting-time system");
    if (pivot != col) {
      for (std::size_t k = col; k < size; ++k)
        std::swap(a[col * size + k], a[pivot * size + k]);
      std::swap(rhs[col], rhs[pivot]);
    }
    const double inv = 1.0 / a[col * size + col];
    for (std::size_t row = col + 1; row < size; ++row) {
      const double factor = a[row * size + col] * inv;
      if (factor == 0.0) continue;
      a[row * size + col] = 0.0;
      for (std::size_t k = col + 1; k < size; ++k)
        a[row * size + k] -= factor * a[col * size + k];
      rhs[row] -= factor * rhs[col];
    }
  }
  for (std::size_t row = size; row-- > 0;) {
    double acc = rhs[row];
    for (std::size_t k = row + 1; k < size; ++k)
      acc -= a[row * size + k] * rhs[k];
    rhs[row] = acc / a[row * size + row];
  }
}

}  // namespace

HittingTimeReport exact_expected_times(const Instance& inst, AlgorithmSpec algo) {
  check_caps(inst, algo);
  const StateTable table(inst);

  std::vector<std::int32_t> transient_index(table.count, -1);
  std::vector<std::uint32_t> transient_states;
  for (std::uint32_t mask = 0; mask < table.count; ++mask) {
    if (!table.optimal[mask]) {
      transient_index[mask] = static_cast<std::int32_t>(transient_states.size());
      transient_states.push_back(mask);
    }
  }

  const std::size_t size = transient_states.size();
  std::vector<double> matrix(size * size, 0.0);
  std::vector<double> times(size, 1.0);
  for (std::size_t row = 0; row < size; ++row) {
    matrix[row * size + row] = 1.0;
    for_each_move(table, algo, transient_states[row],
                  [&](std::uint32_t next, double prob) {
                    const std::int32_t col = transient_index[next];
                    if (col >= 0)
                      matrix[row * size + static_cast<std::size_t>(col)] -= prob;
                  });
  }
  if (size > 0) solve_dense(matrix, times, size);

  HittingTimeReport report;
  report.n = inst.size();
  report.b = inst.bound();
  report.algo = algo;
  report.per_state.assign(table.count, 0.0);
  double sum = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double t = times[i];
    report.per_state[transient_states[i]] = t;
    sum += t;
    worst = std::max(worst, t);
  }
  report.from_uniform = sum / static_cast<double>(table.count);
  report.max_state_time = worst;
  return report;
}

std::vector<std::pair<std::uint32_t, double>> transition_distribution(
    const Instance& inst, AlgorithmSpec algo, std::uint32_t state) {
  check_caps(inst, algo);
  if (state >= (1u << inst.size()))
    throw std::invalid_argument("state mask out of range");
  const StateTable table(inst);
  std::map<std::uint32_t, double> acc;
  for_each_move(table, algo, state,
                [&](std::uint32_t next, double prob) { acc[next] += prob; });
  return {acc.begin(), acc.end()};
}

}  // namespace cle
