#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecoindex/domain.hpp"
#include "ecoindex/ingestion.hpp"

namespace ecoindex {

/// Six-month age bin [6k, 6(k+1)) months, 182.625 days wide.
struct Bin {
  std::int64_t index = 0;

  std::string label() const;  // e.g. "6-12m"
  friend bool operator==(const Bin&, const Bin&) = default;
};

Bin assign_bin(std::int64_t t_days);

struct Cohort {
  int from_year = 0;
  int to_year = 0;

  Cohort() = default;
  Cohort(int from, int to);  // throws Error(Usage) if from > to
  double midpoint() const { return (from_year + to_year) / 2.0; }
};

class QuantileSpec {
 public:
  QuantileSpec() = default;
  explicit QuantileSpec(double q);  // throws Error(Usage) unless 0 < q < 1
  double q() const { return q_; }

 private:
  double q_ = 0.5;
};

/// Linear interpolation between order statistics at zero-based rank
/// q*(n-1). Selection-based; input order is irrelevant.
double quantile(std::span<const double> values, QuantileSpec spec = {});

enum class DayZeroPolicy { Clamp, Drop };

struct IndicatorOptions {
  QuantileSpec quantile{};
  double max_years = 5.0;
  DayZeroPolicy day_zero = DayZeroPolicy::Clamp;
};

/// Known amounts with elapsed_days <= t_days.
Money cumulative_funding(const Startup& startup, std::span<const FundingRound> rounds,
                         std::int64_t t_days);

/// Eq. (speed) in USD/day. Throws Error(SpeedAtCreation) for t_days == 0.
double fundraising_speed(const Startup& startup, std::span<const FundingRound> rounds,
                         std::int64_t t_days);

/// One observation per distinct known-amount round date of one startup.
/// Same-day rounds are merged; day-zero rounds are clamped to day 1 or dropped.
std::vector<SpeedObservation> startup_observations(const Startup& startup,
                                                   std::span<const FundingRound> rounds,
                                                   DayZeroPolicy day_zero = DayZeroPolicy::Clamp);

std::vector<SpeedObservation> speed_observations(const Dataset& dataset, std::string_view ecosystem,
                                                 DayZeroPolicy day_zero = DayZeroPolicy::Clamp);

/// Per-bin quantile of observation speeds, annualized to USD/year, over bins
/// with index < ceil(2 * max_years).
IndicatorSeries ecosystem_speed(const Dataset& dataset, std::string_view ecosystem,
                                const IndicatorOptions& options = {});

struct AccelerationSample {
  std::int64_t t_days = 0;  // later round of the pair
  double usd_per_day2 = 0.0;
};

std::vector<AccelerationSample> startup_acceleration(const Startup& startup,
                                                     std::span<const FundingRound> rounds,
                                                     DayZeroPolicy day_zero = DayZeroPolicy::Clamp);

/// Per-startup accelerations binned by the later round, per-bin quantile,
/// reported in USD million/year^2.
IndicatorSeries ecosystem_acceleration(const Dataset& dataset, std::string_view ecosystem,
                                       const IndicatorOptions& options = {});

enum class AccelerationMode { Absolute, Percent };

/// Differences two cohort speed curves bin by bin. Absolute: change in
/// USD million/year per year of cohort-midpoint spacing. Percent: relative
/// change against the early curve.
IndicatorSeries cohort_difference(const IndicatorSeries& early_speed,
                                  const IndicatorSeries& late_speed, const Cohort& early,
                                  const Cohort& late, AccelerationMode mode);

IndicatorSeries cohort_acceleration(const Dataset& dataset, std::string_view ecosystem,
                                    const Cohort& early, const Cohort& late,
                                    const IndicatorOptions& options, AccelerationMode mode);

struct NthYearValue {
  double value_usd_per_year = 0.0;
  std::size_t sample_count = 0;
};

/// Speed of startups founded in calendar year `founding_year`, measured on the
/// last observation inside day window [365(n-1), 365n).
NthYearValue nth_year_speed(const Dataset& dataset, std::string_view ecosystem, int founding_year,
                            int n, const IndicatorOptions& options = {});

/// nth_year_speed over founding years [from_year, to_year]; empty years omitted.
IndicatorSeries nth_year_series(const Dataset& dataset, std::string_view ecosystem, int n,
                                int from_year, int to_year, const IndicatorOptions& options = {});

}  // namespace ecoindex
