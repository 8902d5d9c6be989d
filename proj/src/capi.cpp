#include "cle.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "harness.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "potential.hpp"
#include "selfcheck.hpp"

struct cle_instance {
  cle::Instance impl;
};

struct cle_profile {
  cle::PotentialProfile impl;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
cle_status guarded(Fn&& fn) {
  try {
    fn();
    return CLE_OK;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return CLE_ERROR_PARSE;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return CLE_ERROR_UNSUPPORTED;
  } catch (const std::length_error& e) {
    g_last_error = e.what();
    return CLE_ERROR_TOO_LARGE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CLE_ERROR_INVALID_ARGUMENT;
  } catch (const std::overflow_error& e) {
    g_last_error = e.what();
    return CLE_ERROR_OVERFLOW;
  } catch (const cle::IoError& e) {
    g_last_error = e.what();
    return CLE_ERROR_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CLE_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CLE_ERROR_INTERNAL;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

cle::BitString bits_of(std::size_t n, const uint8_t* bits) {
  require(bits != nullptr, "bit array is null");
  cle::BitString x(n);
  for (std::size_t i = 0; i < n; ++i) x.set(i, bits[i] != 0);
  return x;
}

cle::BitString to_bit_string(const cle_instance* inst, const uint8_t* bits) {
  require(inst != nullptr, "instance is null");
  return bits_of(inst->impl.size(), bits);
}

char* alloc_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

cle_status make_instance(cle_instance** out, cle::Instance inst) {
  *out = new cle_instance{std::move(inst)};
  return CLE_OK;
}

cle::AlgorithmSpec algo_spec(cle_algo algo, uint32_t rate_numerator) {
  return {algo == CLE_ALGO_RLS ? cle::Algo::Rls : cle::Algo::Ea,
          rate_numerator == 0 ? 1 : rate_numerator};
}

}  // namespace

extern "C" {

const char* cle_version(void) { return "0.1.0"; }

const char* cle_status_name(cle_status status) {
  switch (status) {
    case CLE_OK: return "ok";
    case CLE_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case CLE_ERROR_OVERFLOW: return "overflow";
    case CLE_ERROR_UNSUPPORTED: return "unsupported";
    case CLE_ERROR_TOO_LARGE: return "too large";
    case CLE_ERROR_PARSE: return "parse error";
    case CLE_ERROR_IO: return "io error";
    case CLE_ERROR_CHECK_FAILED: return "check failed";
    case CLE_ERROR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* cle_last_error(void) { return g_last_error.c_str(); }

void cle_string_free(char* text) { delete[] text; }

cle_status cle_instance_create(const uint64_t* weights, size_t n, uint64_t b,
                               cle_instance** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    require(weights != nullptr || n == 0, "weights pointer is null");
    make_instance(out, cle::Instance({weights, weights + n}, b));
  });
}

cle_status cle_instance_gen_iota(size_t n, uint64_t b, cle_instance** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    make_instance(out, cle::gen_iota(n, b));
  });
}

cle_status cle_instance_gen_lower_bound(size_t n, cle_instance** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    make_instance(out, cle::gen_lower_bound(n));
  });
}

cle_status cle_instance_gen_onemax_like(size_t n, uint64_t b,
                                        cle_instance** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    make_instance(out, cle::gen_onemax_like(n, b));
  });
}

cle_status cle_instance_gen_random(size_t n, uint64_t b, uint64_t w_max,
                                   uint64_t seed, cle_instance** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    make_instance(out, cle::gen_random(n, b, w_max, seed));
  });
}

cle_status cle_instance_from_json(const char* text, cle_instance** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    require(text != nullptr, "JSON text is null");
    make_instance(out, cle::Instance::from_json(text));
  });
}

cle_status cle_instance_to_json(const cle_instance* inst, char** out) {
  return guarded([&] {
    require(inst != nullptr, "instance is null");
    require(out != nullptr, "output pointer is null");
    *out = alloc_string(inst->impl.to_json());
  });
}

void cle_instance_free(cle_instance* inst) { delete inst; }

size_t cle_instance_n(const cle_instance* inst) { return inst->impl.size(); }

uint64_t cle_instance_bound(const cle_instance* inst) {
  return inst->impl.bound();
}

uint64_t cle_instance_w_max(const cle_instance* inst) {
  return inst->impl.w_max();
}

uint64_t cle_instance_f_opt(const cle_instance* inst) {
  return inst->impl.f_opt();
}

cle_status cle_instance_weight(const cle_instance* inst, size_t pos,
                               uint64_t* out) {
  return guarded([&] {
    require(inst != nullptr, "instance is null");
    require(out != nullptr, "output pointer is null");
    require(pos < inst->impl.size(), "position out of range");
    *out = inst->impl.weight(pos);
  });
}

cle_status cle_fitness_eval(const cle_instance* inst, const uint8_t* bits,
                            cle_fitness* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    const cle::Fitness f = inst->impl.fitness(to_bit_string(inst, bits));
    *out = {f.objective, f.penalty, f.total};
  });
}

cle_status cle_is_feasible(const cle_instance* inst, const uint8_t* bits,
                           int* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = inst->impl.feasible(to_bit_string(inst, bits)) ? 1 : 0;
  });
}

cle_status cle_is_tight(const cle_instance* inst, const uint8_t* bits,
                        int* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = inst->impl.tight(to_bit_string(inst, bits)) ? 1 : 0;
  });
}

cle_status cle_is_optimal(const cle_instance* inst, const uint8_t* bits,
                          int* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = inst->impl.optimal(to_bit_string(inst, bits)) ? 1 : 0;
  });
}

uint64_t cle_trial_seed(uint64_t master, uint64_t n, uint64_t b,
                        uint64_t rate_numerator, uint64_t trial_index) {
  return cle::trial_seed(master, n, b, rate_numerator, trial_index);
}

cle_status cle_trial_run(const cle_instance* inst, cle_algo algo,
                         uint32_t rate_numerator, uint64_t seed,
                         uint64_t max_iters, const uint8_t* start,
                         cle_trial_result* out) {
  return guarded([&] {
    require(inst != nullptr, "instance is null");
    require(out != nullptr, "output pointer is null");
    const cle::AlgorithmSpec spec = algo_spec(algo, rate_numerator);
    cle::TrialResult result;
    if (start) {
      const cle::BitString x = to_bit_string(inst, start);
      result = cle::run_trial(inst->impl, spec, seed, max_iters, &x);
    } else {
      result = cle::run_trial(inst->impl, spec, seed, max_iters);
    }
    *out = {result.iterations, result.feasibility_hit, result.seed,
            result.hit_cap ? 1 : 0};
  });
}

cle_status cle_uniform_start(size_t n, uint64_t seed, uint8_t* bits) {
  return guarded([&] {
    require(bits != nullptr, "bit array is null");
    require(n >= 1, "n must be >= 1");
    cle::Rng rng(seed);
    const cle::BitString x = cle::uniform_start(n, rng);
    for (std::size_t i = 0; i < n; ++i) bits[i] = x.test(i) ? 1 : 0;
  });
}

cle_status cle_random_feasible_state(const cle_instance* inst, uint64_t seed,
                                     int require_nonoptimal, uint8_t* bits) {
  return guarded([&] {
    require(inst != nullptr, "instance is null");
    require(bits != nullptr, "bit array is null");
    cle::Rng rng(seed);
    constexpr int kMaxTries = 1'000'000;
    for (int attempt = 0; attempt < kMaxTries; ++attempt) {
      const cle::BitString x = cle::uniform_start(inst->impl.size(), rng);
      if (!inst->impl.feasible(x)) continue;
      if (require_nonoptimal && inst->impl.optimal(x)) continue;
      for (std::size_t i = 0; i < x.size(); ++i) bits[i] = x.test(i) ? 1 : 0;
      return;
    }
    throw std::invalid_argument(
        "no feasible state of the requested kind found by sampling");
  });
}

cle_status cle_profile_build(const cle_instance* inst, cle_variant variant,
                             cle_profile** out) {
  return guarded([&] {
    require(inst != nullptr, "instance is null");
    require(out != nullptr, "output pointer is null");
    *out = new cle_profile{cle::PotentialProfile(
        inst->impl, variant == CLE_VARIANT_GENERAL
                        ? cle::PotentialVariant::General
                        : cle::PotentialVariant::Modified)};
  });
}

void cle_profile_free(cle_profile* profile) { delete profile; }

cle_status cle_profile_g(const cle_profile* profile, size_t pos, double* out) {
  return guarded([&] {
    require(profile != nullptr, "profile is null");
    require(out != nullptr, "output pointer is null");
    require(pos < profile->impl.instance().size(), "position out of range");
    *out = profile->impl.g(pos);
  });
}

cle_status cle_profile_gamma(const cle_profile* profile, size_t pos,
                             double* out) {
  return guarded([&] {
    require(profile != nullptr, "profile is null");
    require(out != nullptr, "output pointer is null");
    require(pos < profile->impl.instance().size(), "position out of range");
    *out = profile->impl.gamma(pos);
  });
}

double cle_profile_g_max(const cle_profile* profile) {
  return profile->impl.g_max();
}

double cle_profile_s_min_pos(const cle_profile* profile) {
  return profile->impl.s_min_pos();
}

size_t cle_profile_block_count(const cle_profile* profile) {
  return profile->impl.blocks().size();
}

cle_status cle_profile_block(const cle_profile* profile, size_t index,
                             size_t* begin, size_t* end, int* capped,
                             size_t* kappa) {
  return guarded([&] {
    require(profile != nullptr, "profile is null");
    require(index < profile->impl.blocks().size(), "block index out of range");
    const cle::PotentialBlock& block = profile->impl.blocks()[index];
    if (begin) *begin = block.begin;
    if (end) *end = block.end;
    if (capped) *capped = block.capped ? 1 : 0;
    if (kappa) *kappa = block.kappa;
  });
}

cle_status cle_potential_value(const cle_profile* profile, const uint8_t* bits,
                               double* out) {
  return guarded([&] {
    require(profile != nullptr, "profile is null");
    require(out != nullptr, "output pointer is null");
    *out = profile->impl.value(bits_of(profile->impl.instance().size(), bits));
  });
}

cle_status cle_drift_lower_bound(const cle_profile* profile, double potential,
                                 double* out) {
  return guarded([&] {
    require(profile != nullptr, "profile is null");
    require(out != nullptr, "output pointer is null");
    *out = cle::drift_lower_bound(profile->impl, potential);
  });
}

cle_status cle_exact_rls_drift(const cle_profile* profile, const uint8_t* bits,
                               double* out) {
  return guarded([&] {
    require(profile != nullptr, "profile is null");
    require(out != nullptr, "output pointer is null");
    *out = cle::exact_rls_drift(
        profile->impl, bits_of(profile->impl.instance().size(), bits));
  });
}

cle_status cle_estimate_ea_drift(const cle_profile* profile,
                                 const uint8_t* bits, uint32_t rate_numerator,
                                 uint64_t samples, uint64_t seed,
                                 cle_drift_estimate* out) {
  return guarded([&] {
    require(profile != nullptr, "profile is null");
    require(out != nullptr, "output pointer is null");
    const cle::BitString x = bits_of(profile->impl.instance().size(), bits);
    cle::Rng rng(seed);
    const cle::DriftEstimate estimate = cle::estimate_ea_drift(
        profile->impl, x, rate_numerator == 0 ? 1 : rate_numerator, samples,
        rng);
    *out = {estimate.mean, estimate.std_error, estimate.samples};
  });
}

cle_status cle_feasibility_time_bound(size_t n, uint64_t b, double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = cle::feasibility_time_bound(n, b);
  });
}

cle_status cle_multiplicative_drift_expected(double delta, double x0,
                                             double s_min, double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    *out = cle::multiplicative_drift_bound(delta, x0, s_min).expected;
  });
}

cle_status cle_multiplicative_drift_tail(double delta, double x0, double s_min,
                                         double r, double* time,
                                         double* probability) {
  return guarded([&] {
    require(r > 0.0, "tail requires r > 0");
    const cle::MultiplicativeDriftBound bound =
        cle::multiplicative_drift_bound(delta, x0, s_min);
    if (time) *time = bound.time(r);
    if (probability) *probability = cle::MultiplicativeDriftBound::tail_probability(r);
  });
}

cle_status cle_ea_runtime_bound(const cle_profile* profile, double* out) {
  return guarded([&] {
    require(profile != nullptr, "profile is null");
    require(out != nullptr, "output pointer is null");
    *out = cle::ea_runtime_bound(profile->impl);
  });
}

cle_status cle_oracle_expected_time(const cle_instance* inst, cle_algo algo,
                                    uint32_t rate_numerator,
                                    cle_oracle_report* out) {
  return guarded([&] {
    require(inst != nullptr, "instance is null");
    require(out != nullptr, "output pointer is null");
    const cle::HittingTimeReport report =
        cle::exact_expected_times(inst->impl, algo_spec(algo, rate_numerator));
    *out = {report.from_uniform, report.max_state_time,
            static_cast<uint64_t>(report.per_state.size())};
  });
}

cle_status cle_oracle_state_time(const cle_instance* inst, cle_algo algo,
                                 uint32_t rate_numerator, const uint8_t* bits,
                                 double* out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is null");
    const cle::BitString x = to_bit_string(inst, bits);
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x.test(i)) mask |= 1u << i;
    const cle::HittingTimeReport report =
        cle::exact_expected_times(inst->impl, algo_spec(algo, rate_numerator));
    *out = report.per_state[mask];
  });
}

cle_status cle_sweep_run(const char* config_json, char** result_json) {
  return guarded([&] {
    require(config_json != nullptr, "config JSON is null");
    const cle::SweepConfig config = cle::SweepConfig::from_json(config_json);
    const cle::SweepResult result = cle::run_sweep(config);
    if (result_json) {
      nlohmann::json doc;
      doc["cells"] = result.summary.size();
      doc["trials"] = result.raw.size();
      doc["censored"] = result.censored;
      if (config.out_prefix.empty()) {
        doc["raw_csv"] = nullptr;
        doc["summary_csv"] = nullptr;
      } else {
        doc["raw_csv"] = config.out_prefix + ".raw.csv";
        doc["summary_csv"] = config.out_prefix + ".summary.csv";
      }
      *result_json = alloc_string(doc.dump());
    }
  });
}

cle_status cle_fit_scaling(const double* n_values, const double* means,
                           size_t count, double* exponent, double* r_squared) {
  return guarded([&] {
    require(n_values != nullptr && means != nullptr, "input arrays are null");
    std::vector<std::pair<double, double>> points;
    points.reserve(count);
    for (size_t i = 0; i < count; ++i) points.emplace_back(n_values[i], means[i]);
    const auto [slope, r2] = cle::fit_scaling(points);
    if (exponent) *exponent = slope;
    if (r_squared) *r_squared = r2;
  });
}

cle_status cle_check_run(uint64_t seed, uint32_t instances, uint32_t max_n,
                         char** report_json) {
  cle::CheckReport report;
  const cle_status status = guarded([&] {
    require(instances >= 1, "check requires at least one instance");
    require(max_n >= 1, "check requires max_n >= 1");
    report = cle::run_invariant_checks(seed, instances, max_n);
  });
  if (status != CLE_OK) return status;
  if (report_json) {
    nlohmann::json doc;
    doc["seed"] = report.seed;
    doc["instances"] = report.instances;
    doc["checks"] = report.checks;
    doc["failures"] = report.failures;
    *report_json = alloc_string(doc.dump());
  }
  if (!report.ok()) {
    g_last_error = "invariant check failed";
    return CLE_ERROR_CHECK_FAILED;
  }
  return CLE_OK;
}

}  // extern "C"
