#ifndef DYADIC_TERNARY_WORD_HPP
#define DYADIC_TERNARY_WORD_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dyadic/error.hpp"

namespace dyadic {

/// A finite partial function from indices to {0, 1}; indices outside the
/// domain read as ⊥.
class TernaryWord {
 public:
  TernaryWord() = default;

  /// The total binary word of the given length; index 0 takes the most
  /// significant of the `length` low bits of `bits`.
  static TernaryWord binary(std::size_t length, std::size_t bits) {
    TernaryWord w;
    for (std::size_t n = 0; n < length; ++n) w.set(n, (bits >> (length - 1 - n)) & 1U);
    return w;
  }

  /// Parses one character per index: '0', '1', and '_' or '⊥' for ⊥.
  static TernaryWord parse(std::string_view text) {
    TernaryWord w;
    std::size_t n = 0;
    for (std::size_t i = 0; i < text.size(); ++n) {
      char c = text[i];
      if (c == '0' || c == '1') {
        w.set(n, c == '1' ? 1 : 0);
        ++i;
      } else if (c == '_') {
        ++i;
      } else if (text.substr(i, 3) == "\xE2\x8A\xA5") {  // ⊥
        i += 3;
      } else {
        throw input_error("bad ternary word '" + std::string(text) + "'");
      }
    }
    return w;
  }

  void set(std::size_t index, unsigned digit) { digits_[index] = digit ? 1 : 0; }
  void clear(std::size_t index) { digits_.erase(index); }

  std::optional<unsigned> at(std::size_t index) const {
    auto it = digits_.find(index);
    if (it == digits_.end()) return std::nullopt;
    return it->second;
  }

  const std::map<std::size_t, unsigned>& digits() const { return digits_; }
  std::vector<std::size_t> dom() const {
    std::vector<std::size_t> out;
    for (const auto& [n, d] : digits_) out.push_back(n);
    return out;
  }
  bool empty() const { return digits_.empty(); }
  std::size_t span() const { return digits_.empty() ? 0 : digits_.rbegin()->first + 1; }

  /// True when `other` agrees with this word on all of dom(this).
  bool is_prefix_of(const TernaryWord& other) const {
    for (const auto& [n, d] : digits_) {
      if (other.at(n) != d) return false;
    }
    return true;
  }

  /// One character per index below `length` (default: up to the last
  /// assigned index).
  std::string render(std::optional<std::size_t> length = std::nullopt, bool ascii = true) const {
    std::size_t len = length.value_or(span());
    std::string out;
    for (std::size_t n = 0; n < len; ++n) {
      auto d = at(n);
      if (d) out += static_cast<char>('0' + *d);
      else out += ascii ? "_" : "\xE2\x8A\xA5";
    }
    return out;
  }

  friend bool operator==(const TernaryWord&, const TernaryWord&) = default;

 private:
  std::map<std::size_t, unsigned> digits_;
};

}  // namespace dyadic

#endif  // DYADIC_TERNARY_WORD_HPP
