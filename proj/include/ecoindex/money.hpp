#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ecoindex {

// Exact decimal US dollars, stored as a count of micro-dollars.
class Money {
 public:
  using Rep = __int128;
  static constexpr std::int64_t kMicrosPerDollar = 1'000'000;

  constexpr Money() = default;

  static constexpr Money from_micros(Rep micros) {
    Money m;
    m.micros_ = micros;
    return m;
  }
  static constexpr Money from_dollars(std::int64_t dollars) {
    return from_micros(static_cast<Rep>(dollars) * kMicrosPerDollar);
  }

  /// Plain decimal text: digits with an optional '.' and at most six
  /// fractional digits. No sign, exponent, grouping or currency symbol.
  static std::optional<Money> parse(std::string_view text);

  constexpr Rep micros() const { return micros_; }
  double to_double() const;

  /// Shortest exact decimal rendering ("1500000", "12.5", "0.000001").
  std::string to_string() const;

  constexpr Money& operator+=(Money other) {
    micros_ += other.micros_;
    return *this;
  }
  friend constexpr Money operator+(Money a, Money b) { return a += b; }
  friend constexpr Money operator*(Money a, std::int64_t k) { return from_micros(a.micros_ * k); }

  friend constexpr auto operator<=>(const Money&, const Money&) = default;
  friend constexpr bool operator==(const Money&, const Money&) = default;

 private:
  Rep micros_ = 0;
};

}  // namespace ecoindex
