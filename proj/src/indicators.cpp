#include "ecoindex/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace ecoindex {

namespace {

// 182.625 = 1461 / 8 days per half-year.
constexpr std::int64_t kBinNumerator = 8;
constexpr std::int64_t kBinDenominator = 1461;

std::int64_t bin_limit(double max_years) {
  if (!(max_years > 0.0)) throw Error(ErrorCode::Usage, "max_years must be positive");
  return static_cast<std::int64_t>(std::ceil(max_years * 2.0));
}

IndicatorSeries quantile_series(std::string_view ecosystem, Indicator indicator, Unit unit,
                                const std::map<std::int64_t, std::vector<double>>& bins,
                                QuantileSpec spec, double scale) {
  IndicatorSeries series;
  series.ecosystem = std::string(ecosystem);
  series.indicator = indicator;
  series.unit = unit;
  for (const auto& [index, values] : bins) {
    series.points.push_back(
        SeriesPoint{index, Bin{index}.label(), quantile(values, spec) * scale, values.size()});
  }
  return series;
}

}  // namespace

std::string Bin::label() const {
  std::ostringstream ss;
  ss << 6 * index << '-' << 6 * (index + 1) << 'm';
  return ss.str();
}

Bin assign_bin(std::int64_t t_days) {
  if (t_days < 0) throw Error(ErrorCode::Usage, "assign_bin: negative day count");
  return Bin{(t_days * kBinNumerator) / kBinDenominator};
}

Cohort::Cohort(int from, int to) : from_year(from), to_year(to) {
  if (from > to) throw Error(ErrorCode::Usage, "cohort start year after end year");
}

QuantileSpec::QuantileSpec(double q) : q_(q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::Usage, "quantile must lie strictly in (0,1)");
}

double quantile(std::span<const double> values, QuantileSpec spec) {
  if (values.empty()) throw Error(ErrorCode::EmptySample, "quantile of an empty sample");
  std::vector<double> work(values.begin(), values.end());
  const double rank = spec.q() * static_cast<double>(work.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const double frac = rank - static_cast<double>(lo);
  auto nth = work.begin() + static_cast<std::ptrdiff_t>(lo);
  std::nth_element(work.begin(), nth, work.end());
  const double a = *nth;
  if (frac == 0.0 || lo + 1 >= work.size()) return a;
  const double b = *std::min_element(nth + 1, work.end());
  const double v = a + frac * (b - a);
  return std::clamp(v, a, b);
}

Money cumulative_funding(const Startup& startup, std::span<const FundingRound> rounds,
                         std::int64_t t_days) {
  Money total;
  for (const auto& r : rounds) {
    if (!r.amount_usd) continue;
    if (elapsed_days(startup, r.announced) <= t_days) total += *r.amount_usd;
  }
  return total;
}

double fundraising_speed(const Startup& startup, std::span<const FundingRound> rounds,
                         std::int64_t t_days) {
  if (t_days == 0) {
    throw Error(ErrorCode::SpeedAtCreation,
                "fundraising speed is undefined at the creation date of '" + startup.id + "'");
  }
  if (t_days < 0) throw Error(ErrorCode::RoundBeforeFounding, "negative elapsed time");
  return cumulative_funding(startup, rounds, t_days).to_double() / static_cast<double>(t_days);
}

std::vector<SpeedObservation> startup_observations(const Startup& startup,
                                                   std::span<const FundingRound> rounds,
                                                   DayZeroPolicy day_zero) {
  // Rounds arrive sorted by date; same-day rounds collapse into one observation.
  std::vector<std::pair<std::int64_t, Money>> merged;
  for (const auto& r : rounds) {
    if (!r.amount_usd) continue;
    const auto t = elapsed_days(startup, r.announced);
    if (!merged.empty() && merged.back().first == t) {
      merged.back().second += *r.amount_usd;
    } else {
      merged.emplace_back(t, *r.amount_usd);
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<SpeedObservation> out;
  Money cumulative;
  for (const auto& [t, amount] : merged) {
    cumulative += amount;
    std::int64_t at = t;
    if (at == 0) {
      if (day_zero == DayZeroPolicy::Drop) continue;
      at = 1;
    }
    out.push_back(SpeedObservation{startup.id, at, cumulative,
                                   cumulative.to_double() / static_cast<double>(at)});
  }
  return out;
}

std::vector<SpeedObservation> speed_observations(const Dataset& dataset, std::string_view ecosystem,
                                                 DayZeroPolicy day_zero) {
  std::vector<SpeedObservation> out;
  for (const Startup* s : dataset.in_ecosystem(ecosystem)) {
    auto obs = startup_observations(*s, dataset.rounds_of(s->id), day_zero);
    out.insert(out.end(), std::make_move_iterator(obs.begin()), std::make_move_iterator(obs.end()));
  }
  return out;
}

IndicatorSeries ecosystem_speed(const Dataset& dataset, std::string_view ecosystem,
                                const IndicatorOptions& options) {
  const auto limit = bin_limit(options.max_years);
  std::map<std::int64_t, std::vector<double>> bins;
  for (const auto& o : speed_observations(dataset, ecosystem, options.day_zero)) {
    const auto b = assign_bin(o.t_days).index;
    if (b < limit) bins[b].push_back(o.speed_usd_per_day);
  }
  if (bins.empty()) {
    throw Error(ErrorCode::EmptySample,
                "no speed observations for ecosystem '" + std::string(ecosystem) + "'");
  }
  return quantile_series(ecosystem, Indicator::Speed, Unit::UsdPerYear, bins, options.quantile,
                         kDaysPerYear);
}

std::vector<AccelerationSample> startup_acceleration(const Startup& startup,
                                                     std::span<const FundingRound> rounds,
                                                     DayZeroPolicy day_zero) {
  const auto obs = startup_observations(startup, rounds, day_zero);
  std::vector<AccelerationSample> out;
  for (std::size_t k = 1; k < obs.size(); ++k) {
    const auto dt = obs[k].t_days - obs[k - 1].t_days;
    if (dt <= 0) continue;  // a clamped day-zero round can share day 1
    out.push_back(AccelerationSample{
        obs[k].t_days,
        (obs[k].speed_usd_per_day - obs[k - 1].speed_usd_per_day) / static_cast<double>(dt)});
  }
  if (out.empty()) {
    throw Error(ErrorCode::EmptySample,
                "startup '" + startup.id + "' has fewer than two usable funding rounds");
  }
  return out;
}

IndicatorSeries ecosystem_acceleration(const Dataset& dataset, std::string_view ecosystem,
                                       const IndicatorOptions& options) {
  const auto limit = bin_limit(options.max_years);
  std::map<std::int64_t, std::vector<double>> bins;
  for (const Startup* s : dataset.in_ecosystem(ecosystem)) {
    std::vector<AccelerationSample> samples;
    try {
      samples = startup_acceleration(*s, dataset.rounds_of(s->id), options.day_zero);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptySample) throw;
      continue;
    }
    for (const auto& a : samples) {
      const auto b = assign_bin(a.t_days).index;
      if (b < limit) bins[b].push_back(a.usd_per_day2);
    }
  }
  if (bins.empty()) {
    throw Error(ErrorCode::EmptySample,
                "no acceleration samples for ecosystem '" + std::string(ecosystem) + "'");
  }
  return quantile_series(ecosystem, Indicator::Acceleration, Unit::UsdMillionPerYear2, bins,
                         options.quantile, kDaysPerYear * kDaysPerYear / 1e6);
}

IndicatorSeries cohort_difference(const IndicatorSeries& early_speed,
                                  const IndicatorSeries& late_speed, const Cohort& early,
                                  const Cohort& late, AccelerationMode mode) {
  const double spacing = late.midpoint() - early.midpoint();
  if (!(spacing > 0.0)) throw Error(ErrorCode::Usage, "late cohort must follow the early cohort");
  if (early.to_year >= late.from_year) throw Error(ErrorCode::Usage, "cohorts must be disjoint");
  const bool engineer = early_speed.unit == Unit::EngineerYearsPerYear;

  IndicatorSeries out;
  out.ecosystem = early_speed.ecosystem;
  out.indicator = Indicator::Acceleration;
  out.unit = mode == AccelerationMode::Percent
                 ? Unit::Percent
                 : (engineer ? Unit::EngineerYearsMillionPerYear2 : Unit::UsdMillionPerYear2);

  std::map<std::int64_t, const SeriesPoint*> early_points;
  for (const auto& p : early_speed.points) early_points[p.index] = &p;
  for (const auto& lp : late_speed.points) {
    auto it = early_points.find(lp.index);
    if (it == early_points.end()) continue;
    const SeriesPoint& ep = *it->second;
    double value = 0.0;
    if (mode == AccelerationMode::Absolute) {
      value = (lp.value - ep.value) / spacing / 1e6;
    } else {
      if (ep.value == 0.0) {
        out.warnings.push_back("bin " + ep.label + ": early-cohort speed is zero, percent change omitted");
        continue;
      }
      value = 100.0 * (lp.value - ep.value) / ep.value;
    }
    out.points.push_back(SeriesPoint{lp.index, lp.label, value, ep.sample_count + lp.sample_count});
  }
  return out;
}

IndicatorSeries cohort_acceleration(const Dataset& dataset, std::string_view ecosystem,
                                    const Cohort& early, const Cohort& late,
                                    const IndicatorOptions& options, AccelerationMode mode) {
  const auto early_speed =
      ecosystem_speed(filter_founded(dataset, early.from_year, early.to_year), ecosystem, options);
  const auto late_speed =
      ecosystem_speed(filter_founded(dataset, late.from_year, late.to_year), ecosystem, options);
  return cohort_difference(early_speed, late_speed, early, late, mode);
}

NthYearValue nth_year_speed(const Dataset& dataset, std::string_view ecosystem, int founding_year,
                            int n, const IndicatorOptions& options) {
  if (n < 1) throw Error(ErrorCode::Usage, "n-th year speed requires n >= 1");
  const std::int64_t lo = 365 * static_cast<std::int64_t>(n - 1);
  const std::int64_t hi = 365 * static_cast<std::int64_t>(n);
  std::vector<double> speeds;
  for (const Startup* s : dataset.in_ecosystem(ecosystem)) {
    if (static_cast<int>(s->founded.year()) != founding_year) continue;
    const auto obs = startup_observations(*s, dataset.rounds_of(s->id), options.day_zero);
    const SpeedObservation* last = nullptr;
    for (const auto& o : obs) {
      if (o.t_days >= lo && o.t_days < hi) last = &o;
    }
    if (last) speeds.push_back(last->speed_usd_per_day);
  }
  if (speeds.empty()) {
    throw Error(ErrorCode::EmptySample, "no year-" + std::to_string(n) + " observations for '" +
                                            std::string(ecosystem) + "' startups founded in " +
                                            std::to_string(founding_year));
  }
  return NthYearValue{to_usd_per_year(quantile(speeds, options.quantile)), speeds.size()};
}

IndicatorSeries nth_year_series(const Dataset& dataset, std::string_view ecosystem, int n,
                                int from_year, int to_year, const IndicatorOptions& options) {
  IndicatorSeries series;
  series.ecosystem = std::string(ecosystem);
  series.indicator = Indicator::NthYearSpeed;
  series.unit = Unit::UsdPerYear;
  for (int y = from_year; y <= to_year; ++y) {
    try {
      const auto v = nth_year_speed(dataset, ecosystem, y, n, options);
      series.points.push_back(SeriesPoint{y, std::to_string(y), v.value_usd_per_year, v.sample_count});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptySample) throw;
    }
  }
  if (series.points.empty()) {
    throw Error(ErrorCode::EmptySample, "no year-" + std::to_string(n) + " observations for '" +
                                            std::string(ecosystem) + "'");
  }
  return series;
}

}  // namespace ecoindex
