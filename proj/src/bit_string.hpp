#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cle {

// Candidate solution: n bits with a cached one-count. Position 0 carries the
// smallest weight of the instance; printed strings put the most significant
// position first, so position 0 is the rightmost character.
class BitString {
 public:
  explicit BitString(std::size_t n) : bits_(n, 0) {}

  static BitString with_ones(std::size_t n,
                             std::initializer_list<std::size_t> positions) {
    BitString x(n);
    for (std::size_t pos : positions) x.set(pos, true);
    return x;
  }

  static BitString all_ones(std::size_t n) {
    BitString x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, true);
    return x;
  }

  std::size_t size() const { return bits_.size(); }
  std::size_t ones() const { return ones_; }

  bool test(std::size_t pos) const { return bits_[pos] != 0; }

  void set(std::size_t pos, bool value) {
    if (bits_[pos] != static_cast<std::uint8_t>(value)) {
      bits_[pos] = static_cast<std::uint8_t>(value);
      ones_ += value ? 1 : static_cast<std::size_t>(-1);
    }
  }

  void flip(std::size_t pos) { set(pos, !test(pos)); }

  const std::vector<std::uint8_t>& raw() const { return bits_; }

  std::string msb_string() const {
    std::string out(size(), '0');
    for (std::size_t i = 0; i < size(); ++i)
      if (test(i)) out[size() - 1 - i] = '1';
    return out;
  }

  static BitString parse_msb(std::string_view text) {
    BitString x(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[text.size() - 1 - i];
      if (c == '1')
        x.set(i, true);
      else if (c != '0')
        throw std::invalid_argument("bit string must consist of 0s and 1s");
    }
    return x;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t ones_ = 0;
};

}  // namespace cle
