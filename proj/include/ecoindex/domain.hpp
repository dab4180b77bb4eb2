#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ecoindex/money.hpp"

namespace ecoindex {

using Date = std::chrono::year_month_day;

/// Error categories raised by the engine. Record-level ingestion problems are
/// not thrown; they are collected as RawRecordError values instead.
enum class ErrorCode {
  RoundBeforeFounding,
  SpeedAtCreation,
  EmptySample,
  MissingPpp,
  UnitMismatch,
  Config,
  Usage,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class FundingStage { Seed, SeriesA, SeriesB, SeriesC, SeriesD, SeriesE, Other };

inline constexpr std::array<FundingStage, 7> kAllStages = {
    FundingStage::Seed,    FundingStage::SeriesA, FundingStage::SeriesB,
    FundingStage::SeriesC, FundingStage::SeriesD, FundingStage::SeriesE,
    FundingStage::Other};

std::string_view to_string(FundingStage stage);
std::optional<FundingStage> parse_stage_name(std::string_view canonical);

struct Startup {
  std::string id;
  std::string name;
  Date founded;
  std::string ecosystem;
};

struct FundingRound {
  std::string startup_id;
  Date announced;
  std::optional<Money> amount_usd;  // nullopt: amount unknown
  FundingStage stage = FundingStage::Other;
};

struct SpeedObservation {
  std::string startup_id;
  std::int64_t t_days = 1;
  Money cumulative_usd;
  double speed_usd_per_day = 0.0;
};

enum class Indicator { Speed, Acceleration, NthYearSpeed, StageDistribution };

std::string_view to_string(Indicator indicator);

enum class Unit {
  UsdPerYear,
  UsdMillionPerYear2,
  EngineerYearsPerYear,
  EngineerYearsMillionPerYear2,
  Percent,
  Share,
};

std::string_view to_string(Unit unit);

struct SeriesPoint {
  std::int64_t index = 0;
  std::string label;
  double value = 0.0;
  std::size_t sample_count = 0;
};

struct IndicatorSeries {
  std::string ecosystem;
  Indicator indicator = Indicator::Speed;
  Unit unit = Unit::UsdPerYear;
  std::vector<SeriesPoint> points;      // strictly increasing index, every sample_count >= 1
  std::vector<std::string> warnings;
};

struct MatchRules {
  std::vector<std::string> cities;
  std::vector<std::string> regions;
  std::vector<std::string> countries;

  /// Case-insensitive exact match on any of the listed location fields.
  bool accepts(std::string_view city, std::string_view region, std::string_view country) const;
};

struct EcosystemConfig {
  std::string name;
  MatchRules match;
  double ppp_divisor_usd = 1.0;
};

/// Parses a strict ISO calendar date (YYYY-MM-DD).
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& date);

/// Whole days from the startup's founding date to `at`.
/// Throws Error(RoundBeforeFounding) when `at` precedes the founding date.
std::int64_t elapsed_days(const Startup& startup, const Date& at);
std::int64_t elapsed_days(const Date& from, const Date& to);

inline constexpr double kDaysPerYear = 365.25;

inline double to_usd_per_year(double speed_usd_per_day) { return speed_usd_per_day * kDaysPerYear; }

}  // namespace ecoindex
