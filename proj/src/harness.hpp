#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "heuristics.hpp"
#include "instance.hpp"

namespace cle {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InstanceFamily { Iota, LowerBound, OnemaxLike, Random, File };

const char* family_name(InstanceFamily family);
InstanceFamily family_from_name(const std::string& name);

// Constraint-bound specification: either explicit values or a range
// "lo..hi" whose endpoints are `k`, `n`, or `n/k` (floored), resolved per n.
struct BoundSpec {
  struct Expr {
    std::uint64_t literal = 0;
    std::uint64_t divisor = 0;  // 0: literal; else floor(n/divisor)
    std::uint64_t resolve(std::size_t n) const {
      return divisor == 0 ? literal : static_cast<std::uint64_t>(n) / divisor;
    }
  };

  std::vector<std::uint64_t> values;  // used when non-empty
  bool has_range = false;
  Expr lo, hi;

  static BoundSpec list(std::vector<std::uint64_t> values);
  // "0..n/3", "1..8", "n/4", "5", "0,1,2"
  static BoundSpec parse(const std::string& text);
  std::vector<std::uint64_t> resolve(std::size_t n) const;
  std::string to_string() const;
};

struct SweepConfig {
  InstanceFamily family = InstanceFamily::Iota;
  std::string instance_path;  // File family
  std::vector<std::size_t> n_list;
  BoundSpec b;
  Algo algo = Algo::Ea;
  std::vector<std::uint32_t> rate_numerators = {1, 2, 3};  // EA cells only
  std::uint32_t runs = 500;
  std::uint64_t master_seed = 1;
  std::uint64_t max_iters = kDefaultMaxIters;
  std::uint64_t random_w_max = 1000;  // Random family
  std::uint64_t instance_seed = 1;    // Random family
  std::string out_prefix;  // CSVs land at <prefix>.raw.csv / <prefix>.summary.csv
  unsigned jobs = 1;

  static SweepConfig from_json(std::string_view text);
  std::string to_json() const;
};

struct RawRow {
  std::size_t n;
  std::uint64_t b;
  std::uint32_t rate_numerator;  // 0 for RLS
  Algo algo;
  InstanceFamily family;
  std::uint32_t run;
  TrialResult result;
};

struct SummaryRow {
  std::size_t n;
  std::uint64_t b;
  std::uint32_t rate_numerator;
  Algo algo;
  InstanceFamily family;
  std::uint32_t runs;
  double mean;
  double std_error;  // sample stddev / sqrt(runs)
  std::uint64_t median;  // lower middle for even counts
  std::uint64_t min;
  std::uint64_t max;
  bool censored;  // some trial hit max_iters
};

struct SweepResult {
  std::vector<RawRow> raw;
  std::vector<SummaryRow> summary;
  bool censored = false;
};

// Runs every cell (n, b, rate) of the config, `runs` trials each, with trial
// seeds trial_seed(master_seed, n, b, rate, run). Trials execute on `jobs`
// workers; rows are keyed by task index, so the output is byte-identical at
// any parallelism level. Writes CSVs when out_prefix is set.
SweepResult run_sweep(const SweepConfig& config);

void write_raw_csv(std::ostream& out, const std::vector<RawRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

// Least-squares slope of ln(mean) on ln(n) with its r^2; needs >= 3 points,
// all coordinates positive.
std::pair<double, double> fit_scaling(
    const std::vector<std::pair<double, double>>& points);

// Aggregation used for summary rows (exposed for consistency checks).
SummaryRow summarize_cell(const std::vector<RawRow>& cell_rows);

}  // namespace cle
