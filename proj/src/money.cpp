#include "ecoindex/money.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ecoindex {

namespace {

constexpr Money::Rep kMaxMicros = std::numeric_limits<Money::Rep>::max() / 10;

}  // namespace

std::optional<Money> Money::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Rep whole = 0;
  std::size_t i = 0;
  std::size_t int_digits = 0;
  for (; i < text.size() && text[i] != '.'; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    whole = whole * 10 + (c - '0');
    if (whole > kMaxMicros / kMicrosPerDollar) return std::nullopt;
    ++int_digits;
  }
  Rep frac = 0;
  int frac_digits = 0;
  if (i < text.size()) {
    ++i;  // '.'
    for (; i < text.size(); ++i) {
      const char c = text[i];
      if (c < '0' || c > '9') return std::nullopt;
      if (++frac_digits > 6) return std::nullopt;
      frac = frac * 10 + (c - '0');
    }
    if (frac_digits == 0 && int_digits == 0) return std::nullopt;
  }
  if (int_digits == 0 && frac_digits == 0) return std::nullopt;
  for (int k = frac_digits; k < 6; ++k) frac *= 10;
  return from_micros(whole * kMicrosPerDollar + frac);
}

double Money::to_double() const {
  // Split so that both halves convert exactly for realistic magnitudes.
  const Rep whole = micros_ / kMicrosPerDollar;
  const Rep frac = micros_ % kMicrosPerDollar;
  if (frac == 0) return static_cast<double>(whole);
  return static_cast<double>(micros_) / static_cast<double>(kMicrosPerDollar);
}

std::string Money::to_string() const {
  Rep v = micros_;
  const bool negative = v < 0;
  if (negative) v = -v;
  Rep whole = v / kMicrosPerDollar;
  Rep frac = v % kMicrosPerDollar;

  std::string digits;
  do {
    digits.push_back(static_cast<char>('0' + static_cast<int>(whole % 10)));
    whole /= 10;
  } while (whole > 0);
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());

  if (frac != 0) {
    std::string f(6, '0');
    for (int k = 5; k >= 0; --k) {
      f[static_cast<std::size_t>(k)] = static_cast<char>('0' + static_cast<int>(frac % 10));
      frac /= 10;
    }
    while (!f.empty() && f.back() == '0') f.pop_back();
    digits += '.';
    digits += f;
  }
  return digits;
}

}  // namespace ecoindex
