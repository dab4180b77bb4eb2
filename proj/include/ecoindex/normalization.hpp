#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

#include "ecoindex/domain.hpp"

namespace ecoindex {

/// Annual software-engineer cost per ecosystem, used as a purchasing-power
/// divisor. Constant over the whole study period.
class PppTable {
 public:
  PppTable() = default;
  explicit PppTable(std::span<const EcosystemConfig> ecosystems);

  /// Throws Error(Config) for a non-positive divisor.
  void set(std::string ecosystem, double divisor_usd);

  /// Throws Error(MissingPpp) when the ecosystem is not covered.
  double divisor(std::string_view ecosystem) const;
  bool contains(std::string_view ecosystem) const;

 private:
  std::map<std::string, double, std::less<>> divisors_;
};

/// Amount expressed in engineer-years.
double ppp_adjust_amount(const Money& amount_usd, std::string_view ecosystem, const PppTable& table);

/// Divides every point by the ecosystem's divisor and relabels the unit.
/// Throws Error(UnitMismatch) for series that are not USD-denominated.
IndicatorSeries ppp_adjust_series(const IndicatorSeries& series, const PppTable& table);

}  // namespace ecoindex
