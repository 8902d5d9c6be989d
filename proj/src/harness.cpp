#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace cle {

namespace {

const char* algo_name(Algo algo) { return algo == Algo::Rls ? "rls" : "ea"; }

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

BoundSpec::Expr parse_bound_expr(const std::string& text) {
  BoundSpec::Expr expr;
  if (text == "n") {
    expr.divisor = 1;
    return expr;
  }
  if (text.rfind("n/", 0) == 0) {
    expr.divisor = std::stoull(text.substr(2));
    if (expr.divisor == 0) throw std::invalid_argument("bound divisor must be >= 1");
    return expr;
  }
  expr.literal = std::stoull(text);
  return expr;
}

struct Cell {
  std::size_t n;
  std::uint64_t b;
  std::uint32_t rate;
  Instance instance;
};

}  // namespace

const char* family_name(InstanceFamily family) {
  switch (family) {
    case InstanceFamily::Iota: return "iota";
    case InstanceFamily::LowerBound: return "lower-bound";
    case InstanceFamily::OnemaxLike: return "onemax-like";
    case InstanceFamily::Random: return "random";
    case InstanceFamily::File: return "file";
  }
  return "?";
}

InstanceFamily family_from_name(const std::string& name) {
  if (name == "iota") return InstanceFamily::Iota;
  if (name == "lower-bound") return InstanceFamily::LowerBound;
  if (name == "onemax-like") return InstanceFamily::OnemaxLike;
  if (name == "random") return InstanceFamily::Random;
  if (name == "file") return InstanceFamily::File;
  throw std::invalid_argument("unknown instance family: " + name);
}

BoundSpec BoundSpec::list(std::vector<std::uint64_t> values) {
  BoundSpec spec;
  spec.values = std::move(values);
  return spec;
}

BoundSpec BoundSpec::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty bound specification");
  BoundSpec spec;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    spec.has_range = true;
    spec.lo = parse_bound_expr(text.substr(0, dots));
    spec.hi = parse_bound_expr(text.substr(dots + 2));
    return spec;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string::npos
                                              ? std::string::npos
                                              : comma - start);
    const Expr expr = parse_bound_expr(token);
    if (expr.divisor != 0) {
      if (text.find(',') != std::string::npos)
        throw std::invalid_argument("n-relative bounds cannot be part of a list");
      spec.has_range = true;
      spec.lo = spec.hi = expr;
      return spec;
    }
    spec.values.push_back(expr.literal);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return spec;
}

std::vector<std::uint64_t> BoundSpec::resolve(std::size_t n) const {
  if (!has_range) return values;
  std::vector<std::uint64_t> out;
  for (std::uint64_t b = lo.resolve(n); b <= hi.resolve(n); ++b)
    out.push_back(b);
  return out;
}

std::string BoundSpec::to_string() const {
  if (!has_range) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(values[i]);
    }
    return out;
  }
  const auto expr_text = [](const Expr& expr) -> std::string {
    if (expr.divisor == 0) return std::to_string(expr.literal);
    if (expr.divisor == 1) return "n";
    return "n/" + std::to_string(expr.divisor);
  };
  return expr_text(lo) + ".." + expr_text(hi);
}

SweepConfig SweepConfig::from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  SweepConfig config;
  if (doc.contains("family"))
    config.family = family_from_name(doc.at("family").get<std::string>());
  if (doc.contains("instance_path"))
    config.instance_path = doc.at("instance_path").get<std::string>();
  if (doc.contains("n")) config.n_list = doc.at("n").get<std::vector<std::size_t>>();
  if (doc.contains("b")) {
    const auto& b = doc.at("b");
    if (b.is_string())
      config.b = BoundSpec::parse(b.get<std::string>());
    else
      config.b = BoundSpec::list(b.get<std::vector<std::uint64_t>>());
  }
  if (doc.contains("algo")) {
    const auto name = doc.at("algo").get<std::string>();
    if (name == "rls")
      config.algo = Algo::Rls;
    else if (name == "ea")
      config.algo = Algo::Ea;
    else
      throw std::invalid_argument("unknown algorithm: " + name);
  }
  if (doc.contains("rate_numerators"))
    config.rate_numerators =
        doc.at("rate_numerators").get<std::vector<std::uint32_t>>();
  if (doc.contains("runs")) config.runs = doc.at("runs").get<std::uint32_t>();
  if (doc.contains("master_seed"))
    config.master_seed = doc.at("master_seed").get<std::uint64_t>();
  if (doc.contains("max_iters"))
    config.max_iters = doc.at("max_iters").get<std::uint64_t>();
  if (doc.contains("random_w_max"))
    config.random_w_max = doc.at("random_w_max").get<std::uint64_t>();
  if (doc.contains("instance_seed"))
    config.instance_seed = doc.at("instance_seed").get<std::uint64_t>();
  if (doc.contains("out_prefix"))
    config.out_prefix = doc.at("out_prefix").get<std::string>();
  if (doc.contains("jobs")) config.jobs = doc.at("jobs").get<unsigned>();
  return config;
}

std::string SweepConfig::to_json() const {
  nlohmann::json doc;
  doc["family"] = family_name(family);
  if (!instance_path.empty()) doc["instance_path"] = instance_path;
  doc["n"] = n_list;
  if (b.has_range)
    doc["b"] = b.to_string();
  else
    doc["b"] = b.values;
  doc["algo"] = algo_name(algo);
  doc["rate_numerators"] = rate_numerators;
  doc["runs"] = runs;
  doc["master_seed"] = master_seed;
  doc["max_iters"] = max_iters;
  doc["random_w_max"] = random_w_max;
  doc["instance_seed"] = instance_seed;
  doc["out_prefix"] = out_prefix;
  doc["jobs"] = jobs;
  return doc.dump();
}

SummaryRow summarize_cell(const std::vector<RawRow>& cell_rows) {
  if (cell_rows.empty())
    throw std::invalid_argument("cannot summarize an empty cell");
  const RawRow& head = cell_rows.front();
  SummaryRow row{head.n,
                 head.b,
                 head.rate_numerator,
                 head.algo,
                 head.family,
                 static_cast<std::uint32_t>(cell_rows.size()),
                 0.0,
                 0.0,
                 0,
                 0,
                 0,
                 false};

  std::vector<std::uint64_t> iterations;
  iterations.reserve(cell_rows.size());
  double sum = 0.0;
  for (const RawRow& raw : cell_rows) {
    iterations.push_back(raw.result.iterations);
    sum += static_cast<double>(raw.result.iterations);
    row.censored = row.censored || raw.result.hit_cap;
  }
  std::sort(iterations.begin(), iterations.end());
  const auto count = static_cast<double>(iterations.size());
  row.mean = sum / count;
  if (iterations.size() > 1) {
    double ss = 0.0;
    for (std::uint64_t it : iterations) {
      const double d = static_cast<double>(it) - row.mean;
      ss += d * d;
    }
    row.std_error = std::sqrt(ss / (count - 1.0) / count);
  }
  row.median = iterations[(iterations.size() - 1) / 2];
  row.min = iterations.front();
  row.max = iterations.back();
  return row;
}

SweepResult run_sweep(const SweepConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("sweep requires runs >= 1");

  std::vector<Cell> cells;
  const auto add_cells = [&](std::size_t n, std::uint64_t b, Instance inst) {
    if (config.algo == Algo::Rls) {
      cells.push_back({n, b, 0, std::move(inst)});
      return;
    }
    for (std::uint32_t rate : config.rate_numerators) {
      if (rate == 0 || rate > n)
        throw std::invalid_argument("rate numerator out of range for cell");
      cells.push_back({n, b, rate, inst});
    }
  };

  if (config.family == InstanceFamily::File) {
    std::ifstream in(config.instance_path);
    if (!in) throw IoError("cannot open instance file: " + config.instance_path);
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    Instance inst = Instance::from_json(text);
    const std::size_t n = inst.size();
    const std::uint64_t b = inst.bound();
    add_cells(n, b, std::move(inst));
  } else {
    if (config.n_list.empty())
      throw std::invalid_argument("sweep requires at least one n");
    for (std::size_t n : config.n_list) {
      if (config.family == InstanceFamily::LowerBound) {
        Instance inst = gen_lower_bound(n);
        const std::uint64_t b = inst.bound();
        add_cells(n, b, std::move(inst));
        continue;
      }
      for (std::uint64_t b : config.b.resolve(n)) {
        if (b > n) throw std::invalid_argument("bound exceeds n in sweep cell");
        switch (config.family) {
          case InstanceFamily::Iota:
            add_cells(n, b, gen_iota(n, b));
            break;
          case InstanceFamily::OnemaxLike:
            add_cells(n, b, gen_onemax_like(n, b));
            break;
          case InstanceFamily::Random:
            add_cells(n, b,
                      gen_random(n, b, config.random_w_max, config.instance_seed));
            break;
          default:
            throw std::logic_error("unreachable family");
        }
      }
    }
  }
  if (cells.empty()) throw std::invalid_argument("sweep has no cells");

  const std::size_t total_tasks = cells.size() * config.runs;
  std::vector<RawRow> raw(total_tasks);

  const auto run_task = [&](std::size_t task) {
    const Cell& cell = cells[task / config.runs];
    const auto run = static_cast<std::uint32_t>(task % config.runs);
    const std::uint64_t seed =
        trial_seed(config.master_seed, cell.n, cell.b, cell.rate, run);
    const AlgorithmSpec algo{config.algo, cell.rate == 0 ? 1 : cell.rate};
    raw[task] = {cell.n,
                 cell.b,
                 cell.rate,
                 config.algo,
                 config.family,
                 run,
                 run_trial(cell.instance, algo, seed, config.max_iters)};
  };

  const unsigned jobs = std::max(1u, config.jobs);
  if (jobs == 1) {
    for (std::size_t task = 0; task < total_tasks; ++task) run_task(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t task = next.fetch_add(1); task < total_tasks;
             task = next.fetch_add(1))
          run_task(task);
      });
    }
    for (auto& worker : workers) worker.join();
  }

  SweepResult result;
  result.raw = std::move(raw);
  result.summary.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const std::vector<RawRow> cell_rows(
        result.raw.begin() + static_cast<std::ptrdiff_t>(c * config.runs),
        result.raw.begin() + static_cast<std::ptrdiff_t>((c + 1) * config.runs));
    result.summary.push_back(summarize_cell(cell_rows));
    result.censored = result.censored || result.summary.back().censored;
  }

  if (!config.out_prefix.empty()) {
    std::ofstream raw_out(config.out_prefix + ".raw.csv");
    std::ofstream summary_out(config.out_prefix + ".summary.csv");
    if (!raw_out || !summary_out)
      throw IoError("cannot write CSV files at prefix: " + config.out_prefix);
    write_raw_csv(raw_out, result.raw);
    write_summary_csv(summary_out, result.summary);
  }
  return result;
}

void write_raw_csv(std::ostream& out, const std::vector<RawRow>& rows) {
  out << "n,B,rate_num,algo,instance,run,seed,iterations,feasibility_hit,hit_cap\n";
  for (const RawRow& row : rows) {
    out << row.n << ',' << row.b << ',' << row.rate_numerator << ','
        << algo_name(row.algo) << ',' << family_name(row.family) << ','
        << row.run << ',' << row.result.seed << ',' << row.result.iterations
        << ',' << row.result.feasibility_hit << ','
        << (row.result.hit_cap ? 1 : 0) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "n,B,rate_num,algo,instance,runs,mean,stderr,median,min,max,censored\n";
  for (const SummaryRow& row : rows) {
    out << row.n << ',' << row.b << ',' << row.rate_numerator << ','
        << algo_name(row.algo) << ',' << family_name(row.family) << ','
        << row.runs << ',' << format_double(row.mean) << ','
        << format_double(row.std_error) << ',' << row.median << ',' << row.min
        << ',' << row.max << ',' << (row.censored ? 1 : 0) << '\n';
  }
}

std::pair<double, double> fit_scaling(
    const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3)
    throw std::invalid_argument("scaling fit needs at least 3 points");
  double mean_x = 0.0, mean_y = 0.0;
  std::vector<std::pair<double, double>> logs;
  logs.reserve(points.size());
  for (const auto& [n, mean] : points) {
    if (!(n > 0.0) || !(mean > 0.0))
      throw std::invalid_argument("scaling fit needs positive coordinates");
    logs.emplace_back(std::log(n), std::log(mean));
    mean_x += logs.back().first;
    mean_y += logs.back().second;
  }
  mean_x /= static_cast<double>(logs.size());
  mean_y /= static_cast<double>(logs.size());
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mean_x) * (x - mean_x);
    syy += (y - mean_y) * (y - mean_y);
    sxy += (x - mean_x) * (y - mean_y);
  }
  if (sxx == 0.0) throw std::invalid_argument("scaling fit needs distinct n");
  const double slope = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return {slope, r2};
}

}  // namespace cle
