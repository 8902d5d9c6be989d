#include "instance.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "rng.hpp"

namespace cle {

namespace {

using u128 = unsigned __int128;

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

}  // namespace

Instance::Instance(std::vector<std::uint64_t> weights, std::uint64_t bound)
    : weights_(std::move(weights)), bound_(bound) {
  if (weights_.empty()) throw std::invalid_argument("instance needs at least one weight");
  if (bound_ > weights_.size())
    throw std::invalid_argument("constraint bound exceeds the number of bits");

  std::sort(weights_.begin(), weights_.end());

  const std::size_t n = weights_.size();
  u128 sum = 0;
  for (std::uint64_t w : weights_) sum += w;
  const u128 unit = static_cast<u128>(n) * weights_.back() + 1;
  if (static_cast<u128>(n) * weights_.back() + sum > kU64Max ||
      static_cast<u128>(bound_) * unit > kU64Max)
    throw std::overflow_error("weights too large: fitness values would overflow 64 bits");

  penalty_unit_ = static_cast<std::uint64_t>(unit);
  std::uint64_t opt = 0;
  for (std::uint64_t i = 0; i < bound_; ++i) opt += weights_[i];
  f_opt_ = opt;
}

Instance Instance::from_json(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  const auto& weights_doc = doc.at("weights");
  std::vector<std::uint64_t> weights;
  weights.reserve(weights_doc.size());
  for (const auto& entry : weights_doc) {
    if (!entry.is_number_unsigned())
      throw std::invalid_argument("instance JSON: weights must be non-negative integers");
    weights.push_back(entry.get<std::uint64_t>());
  }
  if (!doc.at("B").is_number_unsigned())
    throw std::invalid_argument("instance JSON: B must be a non-negative integer");
  const auto bound = doc.at("B").get<std::uint64_t>();
  if (doc.contains("n") && doc.at("n") != weights.size())
    throw std::invalid_argument("instance JSON: n does not match the weight count");
  return Instance(std::move(weights), bound);
}

std::string Instance::to_json() const {
  nlohmann::json doc;
  doc["n"] = weights_.size();
  doc["B"] = bound_;
  doc["weights"] = weights_;
  return doc.dump();
}

std::uint64_t Instance::objective(const BitString& x) const {
  check_length(x);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (x.test(i)) sum += weights_[i];
  return sum;
}

Fitness Instance::fitness(const BitString& x) const {
  const std::uint64_t obj = objective(x);
  const std::uint64_t missing = bound_ > x.ones() ? bound_ - x.ones() : 0;
  const std::uint64_t penalty = missing * penalty_unit_;
  return {obj, penalty, obj + penalty};
}

bool Instance::feasible(const BitString& x) const {
  check_length(x);
  return x.ones() >= bound_;
}

bool Instance::tight(const BitString& x) const {
  check_length(x);
  return x.ones() == bound_;
}

bool Instance::optimal(const BitString& x) const {
  return feasible(x) && objective(x) == f_opt_;
}

void Instance::check_length(const BitString& x) const {
  if (x.size() != weights_.size())
    throw std::invalid_argument("bit string length does not match the instance");
}

Instance gen_iota(std::size_t n, std::uint64_t bound) {
  std::vector<std::uint64_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = i + 1;
  return Instance(std::move(w), bound);
}

Instance gen_lower_bound(std::size_t n) {
  if (n == 0 || n % 4 != 0)
    throw std::invalid_argument("lower-bound instance requires n divisible by 4");
  constexpr std::uint64_t kBase = 1000;
  const std::uint64_t b = n / 4;
  std::vector<std::uint64_t> w(n, kBase + 1);
  for (std::uint64_t i = 0; i < b; ++i) w[i] = kBase;
  return Instance(std::move(w), b);
}

Instance gen_onemax_like(std::size_t n, std::uint64_t bound) {
  if (bound == 0 || bound > n)
    throw std::invalid_argument("onemax-like instance requires 1 <= b <= n");
  std::vector<std::uint64_t> w(n, 1);
  for (std::size_t j = bound; j < n; ++j) w[j] = 1 + (j + 1 - bound);
  return Instance(std::move(w), bound);
}

Instance gen_random(std::size_t n, std::uint64_t bound, std::uint64_t w_max,
                    std::uint64_t seed) {
  if (w_max == 0) throw std::invalid_argument("random instance requires w_max >= 1");
  Rng rng(seed);
  std::vector<std::uint64_t> w(n);
  for (auto& wi : w) wi = 1 + rng.below(w_max);
  return Instance(std::move(w), bound);
}

}  // namespace cle
