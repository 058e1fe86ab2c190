#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>

namespace opm {

// Exact signed decimal: mantissa * 10^exponent with a canonical mantissa (no
// trailing zeros; zero is stored as 0 * 10^0).  Two decimals compare by
// numeric value with no rounding, so "0.3" and "0.29999999999999998" stay
// distinct.  Tokens whose significand cannot be held exactly in 64 bits are
// rejected at parse time.
class decimal {
 public:
  constexpr decimal() = default;

  static std::optional<decimal> parse(std::string_view token) {
    std::size_t i = 0;
    bool negative = false;
    if (i < token.size() && (token[i] == '+' || token[i] == '-')) {
      negative = token[i] == '-';
      ++i;
    }
    std::uint64_t mantissa = 0;
    std::int64_t exponent = 0;
    std::size_t digits = 0;
    bool seen_point = false;
    for (; i < token.size(); ++i) {
      const char c = token[i];
      if (c == '.') {
        if (seen_point) return std::nullopt;
        seen_point = true;
        continue;
      }
      if (c < '0' || c > '9') break;
      ++digits;
      const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
      if (mantissa == 0 && digit == 0) {
        // leading zero: only the fractional scale moves
        if (seen_point) --exponent;
        continue;
      }
      if (mantissa > (kMantissaMax - digit) / 10) return std::nullopt;
      mantissa = mantissa * 10 + digit;
      if (seen_point) --exponent;
    }
    if (digits == 0) return std::nullopt;
    if (i < token.size() && (token[i] == 'e' || token[i] == 'E')) {
      ++i;
      bool exp_negative = false;
      if (i < token.size() && (token[i] == '+' || token[i] == '-')) {
        exp_negative = token[i] == '-';
        ++i;
      }
      if (i == token.size()) return std::nullopt;
      std::int64_t e = 0;
      for (; i < token.size(); ++i) {
        const char c = token[i];
        if (c < '0' || c > '9') return std::nullopt;
        e = e * 10 + (c - '0');
        if (e > kExponentLimit) return std::nullopt;
      }
      exponent += exp_negative ? -e : e;
    }
    if (i != token.size()) return std::nullopt;

    while (mantissa != 0 && mantissa % 10 == 0) {
      mantissa /= 10;
      ++exponent;
    }
    decimal out;
    if (mantissa == 0) return out;
    if (exponent < -kExponentLimit || exponent > kExponentLimit) return std::nullopt;
    out.mantissa_ = negative ? -static_cast<std::int64_t>(mantissa)
                             : static_cast<std::int64_t>(mantissa);
    out.exponent_ = static_cast<std::int32_t>(exponent);
    return out;
  }

  constexpr std::int64_t mantissa() const { return mantissa_; }
  constexpr std::int32_t exponent() const { return exponent_; }

  // Canonical form makes field equality value equality.
  friend constexpr bool operator==(const decimal&, const decimal&) = default;

  friend constexpr std::strong_ordering operator<=>(const decimal& a, const decimal& b) {
    const int sa = a.mantissa_ == 0 ? 0 : (a.mantissa_ < 0 ? -1 : 1);
    const int sb = b.mantissa_ == 0 ? 0 : (b.mantissa_ < 0 ? -1 : 1);
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::strong_ordering::equal;

    // Same nonzero sign: the position of the leading digit decides unless it
    // ties, in which case at most 18 zeros separate the scales and both
    // significands fit a 128-bit product exactly.
    const std::uint64_t ma = magnitude(a.mantissa_);
    const std::uint64_t mb = magnitude(b.mantissa_);
    const std::int64_t lead_a = a.exponent_ + digit_count(ma);
    const std::int64_t lead_b = b.exponent_ + digit_count(mb);
    if (lead_a != lead_b) {
      return sa > 0 ? lead_a <=> lead_b : lead_b <=> lead_a;
    }
    __int128 va = static_cast<__int128>(a.mantissa_);
    __int128 vb = static_cast<__int128>(b.mantissa_);
    if (a.exponent_ >= b.exponent_) {
      va *= pow10(static_cast<std::size_t>(a.exponent_ - b.exponent_));
    } else {
      vb *= pow10(static_cast<std::size_t>(b.exponent_ - a.exponent_));
    }
    if (va < vb) return std::strong_ordering::less;
    if (vb < va) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static constexpr std::uint64_t kMantissaMax = 9'223'372'036'854'775'807ull;
  static constexpr std::int64_t kExponentLimit = 1'000'000;

  static constexpr std::uint64_t magnitude(std::int64_t m) {
    return m < 0 ? static_cast<std::uint64_t>(-(m + 1)) + 1 : static_cast<std::uint64_t>(m);
  }

  static constexpr int digit_count(std::uint64_t v) {
    int d = 1;
    while (v >= 10) {
      v /= 10;
      ++d;
    }
    return d;
  }

  static constexpr __int128 pow10(std::size_t e) {
    __int128 out = 1;
    while (e-- > 0) out *= 10;
    return out;
  }

  std::int64_t mantissa_ = 0;
  std::int32_t exponent_ = 0;
};

}  // namespace opm
