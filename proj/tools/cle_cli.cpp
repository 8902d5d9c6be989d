// Command-line front end for libcle. Everything goes through the C API in
// cle.h; this file only parses flags, assembles JSON, and formats output.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cle.h"
#include "json.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct InstanceDeleter {
  void operator()(cle_instance* inst) const { cle_instance_free(inst); }
};
struct ProfileDeleter {
  void operator()(cle_profile* profile) const { cle_profile_free(profile); }
};
using InstancePtr = std::unique_ptr<cle_instance, InstanceDeleter>;
using ProfilePtr = std::unique_ptr<cle_profile, ProfileDeleter>;

std::string take_string(char* text) {
  std::string out = text ? text : "";
  cle_string_free(text);
  return out;
}

int report_error(cle_status status, const std::string& what) {
  std::cerr << "cle: " << what << ": " << cle_status_name(status);
  const char* detail = cle_last_error();
  if (detail && *detail) std::cerr << " (" << detail << ")";
  std::cerr << "\n";
  switch (status) {
    case CLE_ERROR_INVALID_ARGUMENT:
    case CLE_ERROR_UNSUPPORTED:
    case CLE_ERROR_TOO_LARGE:
    case CLE_ERROR_PARSE:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

struct InstanceFlags {
  std::string family = "iota";
  std::string b_text = "0";
  std::size_t n = 0;
  std::uint64_t w_max = 1000;
  std::uint64_t instance_seed = 1;
  std::string file_path;

  void attach(CLI::App* cmd, bool with_n = true) {
    cmd->add_option("--instance", family,
                    "iota|lower-bound|onemax-like|random|file:<path>");
    cmd->add_option("--instance-file", file_path,
                    "instance JSON file (same as --instance file:<path>)");
    if (with_n) cmd->add_option("--n", n, "number of bits");
    cmd->add_option("--b", b_text, "constraint bound: integer or frac:<x>");
    cmd->add_option("--w-max", w_max, "largest weight for --instance random");
    cmd->add_option("--instance-seed", instance_seed,
                    "weight seed for --instance random");
  }

  void normalize() {
    if (family.rfind("file:", 0) == 0) {
      file_path = family.substr(5);
      family = "file";
    }
    if (!file_path.empty()) family = "file";
  }

  std::uint64_t resolve_b() const {
    if (b_text.rfind("frac:", 0) == 0) {
      const double frac = std::stod(b_text.substr(5));
      if (frac < 0.0 || frac > 1.0)
        throw CLI::ValidationError("--b", "fraction must lie in [0, 1]");
      return static_cast<std::uint64_t>(frac * static_cast<double>(n));
    }
    return std::stoull(b_text);
  }

  InstancePtr build() const {
    cle_instance* inst = nullptr;
    cle_status status = CLE_OK;
    if (family == "file") {
      std::ifstream in(file_path);
      if (!in) {
        std::cerr << "cle: cannot open instance file: " << file_path << "\n";
        return nullptr;
      }
      std::stringstream buffer;
      buffer << in.rdbuf();
      status = cle_instance_from_json(buffer.str().c_str(), &inst);
    } else if (family == "iota") {
      status = cle_instance_gen_iota(n, resolve_b(), &inst);
    } else if (family == "lower-bound") {
      status = cle_instance_gen_lower_bound(n, &inst);
    } else if (family == "onemax-like") {
      status = cle_instance_gen_onemax_like(n, resolve_b(), &inst);
    } else if (family == "random") {
      status = cle_instance_gen_random(n, resolve_b(), w_max, instance_seed, &inst);
    } else {
      std::cerr << "cle: unknown instance family: " << family << "\n";
      return nullptr;
    }
    if (status != CLE_OK) {
      std::exit(report_error(status, "building the instance"));
    }
    return InstancePtr(inst);
  }
};

std::string msb_string(const std::vector<std::uint8_t>& bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[bits.size() - 1 - i] = '1';
  return out;
}

std::vector<std::uint8_t> parse_msb(const std::string& text) {
  std::vector<std::uint8_t> bits(text.size(), 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[text.size() - 1 - i];
    if (c == '1')
      bits[i] = 1;
    else if (c != '0')
      throw CLI::ValidationError("--state", "bit strings consist of 0s and 1s");
  }
  return bits;
}

unsigned default_jobs() {
  if (const char* env = std::getenv("CLE_JOBS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  return 1;
}

std::string algo_descriptor(const std::string& algo, std::uint32_t rate) {
  if (algo == "rls") return "rls";
  return "ea(" + std::to_string(rate) + "/n)";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear functions under a uniform constraint: heuristics, drift "
               "diagnostics, exact oracle, bounds, and experiment sweeps"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", std::string("cle ") + cle_version());

  std::string algo = "ea";
  std::uint32_t rate_num = 1;
  std::uint64_t seed = 1;
  std::uint64_t max_iters = 10'000'000'000ull;
  std::uint32_t runs = 0;
  std::string out_path;
  std::string variant = "general";
  unsigned jobs = default_jobs();

  // run -----------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "single trial, JSON to stdout");
  InstanceFlags run_inst;
  run_inst.attach(run_cmd);
  auto* run_algo = run_cmd->add_option("--algo", algo, "rls|ea");
  auto* run_rate = run_cmd->add_option("--rate-num", rate_num, "EA mutation numerator c (p = c/n)");
  run_cmd->add_option("--seed", seed, "master seed");
  run_cmd->add_option("--max-iters", max_iters, "iteration cap");

  // sweep ---------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "experiment sweep, CSV files");
  std::vector<std::size_t> sweep_n;
  std::vector<std::string> sweep_b;
  std::vector<std::uint32_t> sweep_rates;
  std::string config_path;
  std::string sweep_family = "iota";
  std::uint64_t sweep_w_max = 1000;
  std::uint64_t sweep_instance_seed = 1;
  std::string sweep_file;
  auto* sweep_algo = sweep_cmd->add_option("--algo", algo, "rls|ea");
  auto* sweep_family_opt = sweep_cmd->add_option("--instance", sweep_family,
                                                 "iota|lower-bound|onemax-like|random|file:<path>");
  auto* sweep_n_opt = sweep_cmd->add_option("--n", sweep_n, "bit counts (repeatable)");
  auto* sweep_b_opt = sweep_cmd->add_option("--b", sweep_b,
                                            "bounds: integers (repeatable) or one range like 0..n/3");
  auto* sweep_rate_opt = sweep_cmd->add_option("--rate-num", sweep_rates,
                                               "EA mutation numerators (repeatable)");
  auto* sweep_runs_opt = sweep_cmd->add_option("--runs", runs, "trials per cell (default 500)");
  auto* sweep_seed_opt = sweep_cmd->add_option("--seed", seed, "master seed");
  auto* sweep_iters_opt = sweep_cmd->add_option("--max-iters", max_iters, "iteration cap");
  auto* sweep_out_opt = sweep_cmd->add_option("--out", out_path, "output prefix for CSVs");
  auto* sweep_jobs_opt = sweep_cmd->add_option("--jobs", jobs, "worker threads (default $CLE_JOBS or 1)");
  auto* sweep_wmax_opt = sweep_cmd->add_option("--w-max", sweep_w_max, "largest weight for --instance random");
  auto* sweep_iseed_opt = sweep_cmd->add_option("--instance-seed", sweep_instance_seed,
                                                "weight seed for --instance random");
  sweep_cmd->add_option("--config", config_path, "sweep config JSON (flags override)");

  // drift ---------------------------------------------------------------
  auto* drift_cmd = app.add_subcommand("drift", "EA drift report at a state, JSON");
  InstanceFlags drift_inst;
  drift_inst.attach(drift_cmd);
  std::string state_text;
  drift_cmd->add_option("--variant", variant, "general|modified");
  drift_cmd->add_option("--rate-num", rate_num, "EA mutation numerator");
  drift_cmd->add_option("--seed", seed, "sampling seed");
  drift_cmd->add_option("--runs", runs, "mutation samples (default 100000)");
  drift_cmd->add_option("--state", state_text,
                        "state as a most-significant-bit-first string "
                        "(default: random feasible non-optimal)");

  // oracle --------------------------------------------------------------
  auto* oracle_cmd = app.add_subcommand("oracle", "exact expected time, JSON");
  InstanceFlags oracle_inst;
  oracle_inst.attach(oracle_cmd);
  auto* oracle_algo = oracle_cmd->add_option("--algo", algo, "rls|ea");
  auto* oracle_rate = oracle_cmd->add_option("--rate-num", rate_num, "EA mutation numerator");

  // bounds --------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "runtime bound evaluators, JSON");
  InstanceFlags bounds_inst;
  bounds_inst.attach(bounds_cmd);

  // check ---------------------------------------------------------------
  auto* check_cmd = app.add_subcommand("check", "randomized invariant suite");
  std::uint32_t check_instances = 200;
  std::uint32_t check_max_n = 16;
  check_cmd->add_option("--seed", seed, "suite seed");
  check_cmd->add_option("--runs", check_instances, "instances to generate");
  check_cmd->add_option("--n", check_max_n, "largest instance size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) {
      if (algo != "rls" && algo != "ea") {
        std::cerr << "cle: --algo must be rls or ea\n";
        return kExitUsage;
      }
      if (algo == "rls" && run_rate->count() > 0) {
        std::cerr << "cle: --rate-num is only valid with --algo ea\n";
        return kExitUsage;
      }
      (void)run_algo;
      run_inst.normalize();
      InstancePtr inst = run_inst.build();
      if (!inst) return kExitUsage;
      const std::size_t n = cle_instance_n(inst.get());
      const std::uint64_t b = cle_instance_bound(inst.get());
      const std::uint32_t rate = algo == "rls" ? 0 : rate_num;
      const std::uint64_t stream = cle_trial_seed(seed, n, b, rate, 0);
      cle_trial_result result{};
      const cle_status status = cle_trial_run(
          inst.get(), algo == "rls" ? CLE_ALGO_RLS : CLE_ALGO_EA, rate_num,
          stream, max_iters, nullptr, &result);
      if (status != CLE_OK) return report_error(status, "running the trial");
      nlohmann::json doc;
      doc["algo"] = algo;
      doc["n"] = n;
      doc["B"] = b;
      if (algo == "ea") doc["rate_num"] = rate_num;
      doc["instance"] = run_inst.family;
      doc["seed"] = seed;
      doc["stream_seed"] = stream;
      doc["iterations"] = result.iterations;
      doc["feasibility_hit"] = result.feasibility_hit;
      doc["hit_cap"] = result.hit_cap != 0;
      std::cout << doc.dump() << "\n";
      return 0;
    }

    if (sweep_cmd->parsed()) {
      nlohmann::json config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
          std::cerr << "cle: cannot open config file: " << config_path << "\n";
          return kExitUsage;
        }
        config = nlohmann::json::parse(in);
      }
      std::string family = sweep_family;
      if (family.rfind("file:", 0) == 0) {
        sweep_file = family.substr(5);
        family = "file";
      }
      if (sweep_family_opt->count() > 0 || !config.contains("family"))
        config["family"] = family;
      if (!sweep_file.empty()) config["instance_path"] = sweep_file;
      if (sweep_n_opt->count() > 0) config["n"] = sweep_n;
      if (sweep_b_opt->count() > 0) {
        if (sweep_b.size() == 1 &&
            sweep_b.front().find_first_not_of("0123456789") != std::string::npos) {
          config["b"] = sweep_b.front();
        } else {
          std::vector<std::uint64_t> values;
          for (const std::string& text : sweep_b)
            values.push_back(std::stoull(text));
          config["b"] = values;
        }
      }
      if (sweep_algo->count() > 0 || !config.contains("algo")) config["algo"] = algo;
      if (config["algo"] == "rls" && sweep_rate_opt->count() > 0) {
        std::cerr << "cle: --rate-num is only valid with --algo ea\n";
        return kExitUsage;
      }
      if (sweep_rate_opt->count() > 0) config["rate_numerators"] = sweep_rates;
      if (sweep_runs_opt->count() > 0) config["runs"] = runs;
      if (sweep_seed_opt->count() > 0 || !config.contains("master_seed"))
        config["master_seed"] = seed;
      if (sweep_iters_opt->count() > 0) config["max_iters"] = max_iters;
      if (sweep_out_opt->count() > 0) config["out_prefix"] = out_path;
      if (sweep_jobs_opt->count() > 0 || !config.contains("jobs"))
        config["jobs"] = jobs;
      if (sweep_wmax_opt->count() > 0) config["random_w_max"] = sweep_w_max;
      if (sweep_iseed_opt->count() > 0) config["instance_seed"] = sweep_instance_seed;

      char* result_json = nullptr;
      const cle_status status = cle_sweep_run(config.dump().c_str(), &result_json);
      if (status != CLE_OK) return report_error(status, "running the sweep");
      const std::string result_text = take_string(result_json);
      std::cout << result_text << "\n";
      const auto result = nlohmann::json::parse(result_text);
      return result.value("censored", false) ? kExitFailure : 0;
    }

    if (drift_cmd->parsed()) {
      if (variant != "general" && variant != "modified") {
        std::cerr << "cle: --variant must be general or modified\n";
        return kExitUsage;
      }
      drift_inst.normalize();
      InstancePtr inst = drift_inst.build();
      if (!inst) return kExitUsage;
      const std::size_t n = cle_instance_n(inst.get());
      cle_profile* profile_raw = nullptr;
      cle_status status = cle_profile_build(
          inst.get(),
          variant == "general" ? CLE_VARIANT_GENERAL : CLE_VARIANT_MODIFIED,
          &profile_raw);
      if (status != CLE_OK) return report_error(status, "building the potential");
      ProfilePtr profile(profile_raw);

      std::vector<std::uint8_t> bits;
      if (!state_text.empty()) {
        bits = parse_msb(state_text);
        if (bits.size() != n) {
          std::cerr << "cle: --state length does not match n\n";
          return kExitUsage;
        }
      } else {
        bits.resize(n);
        status = cle_random_feasible_state(inst.get(), seed, 1, bits.data());
        if (status != CLE_OK) return report_error(status, "sampling a state");
      }

      const std::uint64_t samples = runs == 0 ? 100'000 : runs;
      double g_value = 0.0;
      status = cle_potential_value(profile.get(), bits.data(), &g_value);
      if (status != CLE_OK) return report_error(status, "evaluating the potential");
      double bound = 0.0;
      status = cle_drift_lower_bound(profile.get(), g_value, &bound);
      if (status != CLE_OK) return report_error(status, "evaluating the bound");
      cle_drift_estimate estimate{};
      const std::uint64_t b = cle_instance_bound(inst.get());
      status = cle_estimate_ea_drift(profile.get(), bits.data(), rate_num,
                                     samples, cle_trial_seed(seed, n, b, rate_num, 1),
                                     &estimate);
      if (status != CLE_OK) return report_error(status, "estimating the drift");

      nlohmann::json doc;
      doc["state"] = msb_string(bits);
      doc["g_value"] = g_value;
      doc["bound"] = bound;
      doc["mean"] = estimate.mean;
      doc["stderr"] = estimate.std_error;
      doc["samples"] = estimate.samples;
      std::cout << doc.dump() << "\n";
      return 0;
    }

    if (oracle_cmd->parsed()) {
      if (algo != "rls" && algo != "ea") {
        std::cerr << "cle: --algo must be rls or ea\n";
        return kExitUsage;
      }
      if (algo == "rls" && oracle_rate->count() > 0) {
        std::cerr << "cle: --rate-num is only valid with --algo ea\n";
        return kExitUsage;
      }
      (void)oracle_algo;
      oracle_inst.normalize();
      InstancePtr inst = oracle_inst.build();
      if (!inst) return kExitUsage;
      cle_oracle_report report{};
      const cle_status status = cle_oracle_expected_time(
          inst.get(), algo == "rls" ? CLE_ALGO_RLS : CLE_ALGO_EA, rate_num,
          &report);
      if (status != CLE_OK) return report_error(status, "running the oracle");
      nlohmann::json doc;
      doc["from_uniform"] = report.from_uniform;
      doc["n"] = cle_instance_n(inst.get());
      doc["B"] = cle_instance_bound(inst.get());
      doc["algo"] = algo_descriptor(algo, rate_num);
      doc["max_state_time"] = report.max_state_time;
      std::cout << doc.dump() << "\n";
      return 0;
    }

    if (bounds_cmd->parsed()) {
      bounds_inst.normalize();
      InstancePtr inst = bounds_inst.build();
      if (!inst) return kExitUsage;
      const std::size_t n = cle_instance_n(inst.get());
      const std::uint64_t b = cle_instance_bound(inst.get());
      if (b == 0) {
        std::cerr << "cle: bounds require a constraint bound b >= 1\n";
        return kExitUsage;
      }
      double feasibility = 0.0;
      cle_status status = cle_feasibility_time_bound(n, b, &feasibility);
      if (status != CLE_OK) return report_error(status, "feasibility bound");

      cle_profile* general_raw = nullptr;
      status = cle_profile_build(inst.get(), CLE_VARIANT_GENERAL, &general_raw);
      if (status != CLE_OK) return report_error(status, "building the potential");
      ProfilePtr general(general_raw);
      double ea_general = 0.0;
      status = cle_ea_runtime_bound(general.get(), &ea_general);
      if (status != CLE_OK) return report_error(status, "general runtime bound");

      nlohmann::json doc;
      doc["feasibility_bound"] = feasibility;
      doc["ea_bound_general"] = ea_general;
      uint64_t w_first = 0, w_last = 0;
      cle_instance_weight(inst.get(), 0, &w_first);
      cle_instance_weight(inst.get(), b - 1, &w_last);
      if (w_first == w_last) {
        cle_profile* modified_raw = nullptr;
        status = cle_profile_build(inst.get(), CLE_VARIANT_MODIFIED, &modified_raw);
        if (status != CLE_OK) return report_error(status, "building the potential");
        ProfilePtr modified(modified_raw);
        double ea_modified = 0.0;
        status = cle_ea_runtime_bound(modified.get(), &ea_modified);
        if (status != CLE_OK) return report_error(status, "modified runtime bound");
        doc["ea_bound_modified"] = ea_modified;
      } else {
        doc["ea_bound_modified"] = nullptr;
      }

      const double e = 2.718281828459045;
      const double delta = 1.0 / (e * static_cast<double>(n));
      const double x0 = static_cast<double>(n);
      const double s_min = static_cast<double>(n - b + 1);
      double expected = 0.0;
      status = cle_multiplicative_drift_expected(delta, x0, s_min, &expected);
      if (status != CLE_OK) return report_error(status, "multiplicative bound");
      doc["multiplicative_example"] = {
          {"delta", delta}, {"x0", x0}, {"s_min", s_min}, {"expected", expected}};
      std::cout << doc.dump() << "\n";
      return 0;
    }

    if (check_cmd->parsed()) {
      char* report_json = nullptr;
      const cle_status status =
          cle_check_run(seed, check_instances, check_max_n, &report_json);
      const std::string report = take_string(report_json);
      if (!report.empty()) std::cout << report << "\n";
      if (status == CLE_OK) return 0;
      if (status == CLE_ERROR_CHECK_FAILED) {
        std::cerr << "cle: invariant check failed\n";
        return kExitFailure;
      }
      return report_error(status, "running the checks");
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "cle: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cle: " << e.what() << "\n";
    return kExitUsage;
  }

  return kExitUsage;
}
