#include "ecoindex/domain.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace ecoindex {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::RoundBeforeFounding: return "RoundBeforeFounding";
    case ErrorCode::SpeedAtCreation: return "SpeedAtCreation";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::MissingPpp: return "MissingPpp";
    case ErrorCode::UnitMismatch: return "UnitMismatch";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(FundingStage stage) {
  switch (stage) {
    case FundingStage::Seed: return "Seed";
    case FundingStage::SeriesA: return "SeriesA";
    case FundingStage::SeriesB: return "SeriesB";
    case FundingStage::SeriesC: return "SeriesC";
    case FundingStage::SeriesD: return "SeriesD";
    case FundingStage::SeriesE: return "SeriesE";
    case FundingStage::Other: return "Other";
  }
  return "Other";
}

std::optional<FundingStage> parse_stage_name(std::string_view canonical) {
  for (FundingStage s : kAllStages) {
    const auto name = to_string(s);
    if (name.size() != canonical.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < name.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(name[i])) !=
          std::tolower(static_cast<unsigned char>(canonical[i]))) {
        same = false;
        break;
      }
    }
    if (same) return s;
  }
  return std::nullopt;
}

std::string_view to_string(Indicator indicator) {
  switch (indicator) {
    case Indicator::Speed: return "speed";
    case Indicator::Acceleration: return "acceleration";
    case Indicator::NthYearSpeed: return "nth_year_speed";
    case Indicator::StageDistribution: return "stage_distribution";
  }
  return "unknown";
}

std::string_view to_string(Unit unit) {
  switch (unit) {
    case Unit::UsdPerYear: return "USD/year";
    case Unit::UsdMillionPerYear2: return "USD million/year^2";
    case Unit::EngineerYearsPerYear: return "engineer-years/year";
    case Unit::EngineerYearsMillionPerYear2: return "million engineer-years/year^2";
    case Unit::Percent: return "percent";
    case Unit::Share: return "share";
  }
  return "unknown";
}

namespace {

bool iequals(std::string_view a, std::string_view b) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  a = trim(a);
  b = trim(b);
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

bool any_of(const std::vector<std::string>& names, std::string_view value) {
  if (value.empty()) return false;
  return std::any_of(names.begin(), names.end(),
                     [&](const std::string& n) { return iequals(n, value); });
}

}  // namespace

bool MatchRules::accepts(std::string_view city, std::string_view region,
                         std::string_view country) const {
  return any_of(cities, city) || any_of(regions, region) || any_of(countries, country);
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto number = [&](std::size_t pos, std::size_t len) -> std::optional<int> {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
      if (text[i] < '0' || text[i] > '9') return std::nullopt;
      v = v * 10 + (text[i] - '0');
    }
    return v;
  };
  const auto y = number(0, 4);
  const auto m = number(5, 2);
  const auto d = number(8, 2);
  if (!y || !m || !d) return std::nullopt;
  const Date date{std::chrono::year{*y}, std::chrono::month{static_cast<unsigned>(*m)},
                  std::chrono::day{static_cast<unsigned>(*d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::int64_t elapsed_days(const Date& from, const Date& to) {
  return (std::chrono::sys_days{to} - std::chrono::sys_days{from}).count();
}

std::int64_t elapsed_days(const Startup& startup, const Date& at) {
  const auto days = elapsed_days(startup.founded, at);
  if (days < 0) {
    throw Error(ErrorCode::RoundBeforeFounding,
                "date " + format_date(at) + " precedes founding of startup '" + startup.id +
                    "' (" + format_date(startup.founded) + ")");
  }
  return days;
}

}  // namespace ecoindex
