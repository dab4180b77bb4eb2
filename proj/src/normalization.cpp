#include "ecoindex/normalization.hpp"

namespace ecoindex {

PppTable::PppTable(std::span<const EcosystemConfig> ecosystems) {
  for (const auto& e : ecosystems) set(e.name, e.ppp_divisor_usd);
}

void PppTable::set(std::string ecosystem, double divisor_usd) {
  if (!(divisor_usd > 0.0)) {
    throw Error(ErrorCode::Config, "PPP divisor for '" + ecosystem + "' must be positive");
  }
  divisors_[std::move(ecosystem)] = divisor_usd;
}

double PppTable::divisor(std::string_view ecosystem) const {
  auto it = divisors_.find(ecosystem);
  if (it == divisors_.end()) {
    throw Error(ErrorCode::MissingPpp, "no PPP divisor for ecosystem '" + std::string(ecosystem) + "'");
  }
  return it->second;
}

bool PppTable::contains(std::string_view ecosystem) const {
  return divisors_.find(ecosystem) != divisors_.end();
}

double ppp_adjust_amount(const Money& amount_usd, std::string_view ecosystem, const PppTable& table) {
  return amount_usd.to_double() / table.divisor(ecosystem);
}

IndicatorSeries ppp_adjust_series(const IndicatorSeries& series, const PppTable& table) {
  Unit adjusted;
  switch (series.unit) {
    case Unit::UsdPerYear: adjusted = Unit::EngineerYearsPerYear; break;
    case Unit::UsdMillionPerYear2: adjusted = Unit::EngineerYearsMillionPerYear2; break;
    default:
      throw Error(ErrorCode::UnitMismatch, "PPP adjustment needs a USD series, got '" +
                                               std::string(to_string(series.unit)) + "'");
  }
  const double d = table.divisor(series.ecosystem);
  IndicatorSeries out = series;
  out.unit = adjusted;
  for (auto& p : out.points) p.value /= d;
  return out;
}

}  // namespace ecoindex
