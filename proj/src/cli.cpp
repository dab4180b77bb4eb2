#include "ecoindex/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecoindex/distribution.hpp"
#include "ecoindex/indicators.hpp"
#include "ecoindex/ingestion.hpp"
#include "ecoindex/normalization.hpp"
#include "ecoindex/report.hpp"
#include "json.hpp"

namespace ecoindex {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string startups_path;
  std::string rounds_path;
  std::string config_path;
  std::vector<std::string> ecosystems;
  std::optional<int> from_year;
  std::optional<int> to_year;
  std::string cohorts = "2010-2012,2014-2016";
  std::string n_range = "1..4";
  double quantile = 0.5;
  bool ppp = false;
  std::string day_zero = "clamp";
  double max_years = 5.0;
  std::string mode = "cohort";
  std::string format = "csv";
  std::string out_path;
  bool strict = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  Configuration config;
  StartupLoad startups;
  RoundLoad rounds;
  Dataset dataset;
};

void parse_year_range(const std::string& text, int& from, int& to) {
  const auto dash = text.find('-');
  if (dash == std::string::npos) throw UsageError("expected a year range Y1-Y2, got '" + text + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    from = std::stoi(text.substr(0, dash), &p1);
    to = std::stoi(text.substr(dash + 1), &p2);
    if (p1 != dash || p2 != text.size() - dash - 1) throw std::invalid_argument(text);
  } catch (const std::logic_error&) {
    throw UsageError("malformed year range '" + text + "'");
  }
  if (from > to) throw UsageError("year range '" + text + "' is reversed");
}

std::pair<Cohort, Cohort> parse_cohorts(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--cohorts expects Y1-Y2,Y3-Y4");
  int a = 0, b = 0, c = 0, d = 0;
  parse_year_range(text.substr(0, comma), a, b);
  parse_year_range(text.substr(comma + 1), c, d);
  if (b >= c) throw UsageError("cohorts must be disjoint with the early cohort first");
  return {Cohort(a, b), Cohort(c, d)};
}

std::pair<int, int> parse_n_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::logic_error&) {
      throw UsageError("malformed --n value '" + text + "'");
    }
  };
  int lo = 0, hi = 0;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    lo = to_int(text.substr(0, dots));
    hi = to_int(text.substr(dots + 2));
  } else {
    lo = hi = to_int(text);
  }
  if (lo < 1) throw UsageError("--n must be >= 1 (speed is measured after creation)");
  if (lo > hi) throw UsageError("--n range is reversed");
  return {lo, hi};
}

std::string error_line(const RawRecordError& e) {
  std::string s = e.file + ":" + std::to_string(e.line_or_index) + ": " + e.field + ": " +
                  std::string(to_string(e.reason));
  if (!e.detail.empty()) s += " (" + e.detail + ")";
  return s;
}

Loaded load_inputs(const RunConfig& rc, std::ostream& err) {
  for (const auto* p : {&rc.config_path, &rc.startups_path, &rc.rounds_path}) {
    if (p->empty()) throw UsageError("--startups, --rounds and --config (or ECOINDEX_CONFIG) are required");
    if (!std::filesystem::exists(*p)) throw Error(ErrorCode::Io, "file not found: " + *p);
  }
  Loaded in;
  in.config = load_configuration(rc.config_path);
  in.startups = load_startups(rc.startups_path, format_from_path(rc.startups_path), in.config.ecosystems);
  in.rounds = load_rounds(rc.rounds_path, format_from_path(rc.rounds_path), in.startups,
                          in.config.stage_map);
  in.dataset = make_dataset(in.startups, in.rounds);
  for (const auto& id : in.startups.ambiguous_ids) {
    err << "warning: startup '" << id << "' matches several ecosystems; assigned to the first\n";
  }
  return in;
}

std::vector<std::string> selected_ecosystems(const RunConfig& rc, const Configuration& cfg) {
  if (rc.ecosystems.empty()) {
    std::vector<std::string> all;
    for (const auto& e : cfg.ecosystems) all.push_back(e.name);
    return all;
  }
  for (const auto& name : rc.ecosystems) {
    if (!cfg.find(name)) throw UsageError("ecosystem '" + name + "' is not in the configuration");
  }
  return rc.ecosystems;
}

IndicatorOptions options_of(const RunConfig& rc) {
  IndicatorOptions o;
  o.quantile = QuantileSpec(rc.quantile);
  o.max_years = rc.max_years;
  if (!(rc.max_years > 0)) throw UsageError("--max-years must be positive");
  o.day_zero = rc.day_zero == "drop" ? DayZeroPolicy::Drop : DayZeroPolicy::Clamp;
  return o;
}

void report_empty(std::ostream& err, const std::string& eco, const Error& e) {
  err << "warning: " << eco << ": " << to_string(e.code()) << ": " << e.what() << '\n';
}

Json points_json(const IndicatorSeries& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) {
    pts.push_back(Json{{"index", p.index},
                       {"label", p.label},
                       {"value", rounded_sig6(p.value)},
                       {"n", p.sample_count}});
  }
  return pts;
}

std::string value_column(Unit unit) {
  switch (unit) {
    case Unit::UsdPerYear: return "value_usd_per_year";
    case Unit::EngineerYearsPerYear: return "value_engineer_years_per_year";
    default: return "value";
  }
}

// ----- speed ---------------------------------------------------------------

int cmd_speed(const RunConfig& rc, const Loaded& in, std::ostream& out, std::ostream& err) {
  const auto opts = options_of(rc);
  const Dataset data = filter_founded(in.dataset, rc.from_year.value_or(2010), rc.to_year.value_or(9999));
  const PppTable ppp(in.config.ecosystems);
  std::vector<IndicatorSeries> series;
  for (const auto& eco : selected_ecosystems(rc, in.config)) {
    try {
      auto s = ecosystem_speed(data, eco, opts);
      series.push_back(rc.ppp ? ppp_adjust_series(s, ppp) : std::move(s));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptySample) throw;
      report_empty(err, eco, e);
    }
  }
  const Unit unit = rc.ppp ? Unit::EngineerYearsPerYear : Unit::UsdPerYear;
  if (rc.format == "csv") {
    out << "ecosystem,bin_index,bin_label," << value_column(unit) << ",sample_count\n";
    for (const auto& s : series) {
      for (const auto& p : s.points) {
        out << csv_escape(s.ecosystem) << ',' << p.index << ',' << p.label << ','
            << format_sig6(p.value) << ',' << p.sample_count << '\n';
      }
    }
  } else if (rc.format == "json") {
    Json doc{{"indicator", to_string(Indicator::Speed)}, {"unit", to_string(unit)}, {"series", Json::array()}};
    for (const auto& s : series) {
      doc["series"].push_back(Json{{"ecosystem", s.ecosystem}, {"points", points_json(s)}});
    }
    out << doc.dump(2) << '\n';
  } else {
    ChartPanel panel{std::string(rc.ppp ? "PPP-adjusted median" : "Median") + " fundraising speed",
                     "months since creation (bin start)", std::string(to_string(unit)), {}};
    if (rc.quantile != 0.5) panel.title = "Fundraising speed, quantile " + format_sig6(rc.quantile);
    for (const auto& s : series) {
      ChartLine line{s.ecosystem, {}, {}};
      for (const auto& p : s.points) {
        line.x.push_back(6.0 * static_cast<double>(p.index));
        line.y.push_back(p.value);
      }
      panel.lines.push_back(std::move(line));
    }
    out << render_line_chart({panel});
  }
  return series.empty() ? kExitData : kExitOk;
}

// ----- acceleration --------------------------------------------------------

struct ModeSeries {
  std::string mode;
  IndicatorSeries series;
};

int cmd_acceleration(const RunConfig& rc, const Loaded& in, std::ostream& out, std::ostream& err) {
  const auto opts = options_of(rc);
  const PppTable ppp(in.config.ecosystems);
  std::vector<ModeSeries> results;
  std::vector<ChartPanel> overlays;

  if (rc.mode == "per-startup") {
    const Dataset data =
        filter_founded(in.dataset, rc.from_year.value_or(2010), rc.to_year.value_or(9999));
    for (const auto& eco : selected_ecosystems(rc, in.config)) {
      try {
        auto s = ecosystem_acceleration(data, eco, opts);
        results.push_back({"per-startup", rc.ppp ? ppp_adjust_series(s, ppp) : std::move(s)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptySample) throw;
        report_empty(err, eco, e);
      }
    }
  } else {
    const auto [early, late] = parse_cohorts(rc.cohorts);
    const Dataset early_data = filter_founded(in.dataset, early.from_year, early.to_year);
    const Dataset late_data = filter_founded(in.dataset, late.from_year, late.to_year);
    std::vector<ModeSeries> percent;
    for (const auto& eco : selected_ecosystems(rc, in.config)) {
      IndicatorSeries early_speed, late_speed;
      try {
        early_speed = ecosystem_speed(early_data, eco, opts);
        late_speed = ecosystem_speed(late_data, eco, opts);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptySample) throw;
        err << "warning: " << eco << ": cohort empty: " << e.what() << '\n';
        continue;
      }
      if (rc.ppp) {
        early_speed = ppp_adjust_series(early_speed, ppp);
        late_speed = ppp_adjust_series(late_speed, ppp);
      }
      auto abs = cohort_difference(early_speed, late_speed, early, late, AccelerationMode::Absolute);
      auto pct = cohort_difference(early_speed, late_speed, early, late, AccelerationMode::Percent);
      for (const auto& w : pct.warnings) err << "warning: " << eco << ": " << w << '\n';
      results.push_back({"absolute", std::move(abs)});
      percent.push_back({"percent", std::move(pct)});

      ChartPanel overlay{eco + ": fundraising speed by cohort", "months since creation (bin start)",
                         std::string(to_string(early_speed.unit)), {}};
      for (const auto* s : {&early_speed, &late_speed}) {
        const Cohort& c = s == &early_speed ? early : late;
        ChartLine line{std::to_string(c.from_year) + "-" + std::to_string(c.to_year), {}, {}};
        for (const auto& p : s->points) {
          line.x.push_back(6.0 * static_cast<double>(p.index));
          line.y.push_back(p.value);
        }
        overlay.lines.push_back(std::move(line));
      }
      overlays.push_back(std::move(overlay));
    }
    for (auto& p : percent) results.push_back(std::move(p));
  }

  if (rc.format == "csv") {
    out << "ecosystem,mode,bin_index,bin_label,value,unit,sample_count\n";
    for (const auto& [mode, s] : results) {
      for (const auto& p : s.points) {
        out << csv_escape(s.ecosystem) << ',' << mode << ',' << p.index << ',' << p.label << ','
            << format_sig6(p.value) << ',' << to_string(s.unit) << ',' << p.sample_count << '\n';
      }
    }
  } else if (rc.format == "json") {
    const Unit unit = rc.ppp ? Unit::EngineerYearsMillionPerYear2 : Unit::UsdMillionPerYear2;
    Json doc{{"indicator", to_string(Indicator::Acceleration)}, {"unit", to_string(unit)},
             {"series", Json::array()}};
    for (const auto& [mode, s] : results) {
      doc["series"].push_back(Json{{"ecosystem", s.ecosystem},
                                   {"mode", mode},
                                   {"unit", to_string(s.unit)},
                                   {"points", points_json(s)}});
    }
    out << doc.dump(2) << '\n';
  } else {
    std::map<std::string, ChartPanel> panels;
    std::vector<std::string> order;
    for (const auto& [mode, s] : results) {
      if (!panels.contains(mode)) {
        order.push_back(mode);
        panels[mode] = ChartPanel{"Acceleration (" + mode + ")", "months since creation (bin start)",
                                  std::string(to_string(s.unit)), {}};
      }
      ChartLine line{s.ecosystem, {}, {}};
      for (const auto& p : s.points) {
        line.x.push_back(6.0 * static_cast<double>(p.index));
        line.y.push_back(p.value);
      }
      panels[mode].lines.push_back(std::move(line));
    }
    std::vector<ChartPanel> all;
    for (const auto& m : order) all.push_back(panels[m]);
    for (auto& o : overlays) all.push_back(std::move(o));
    out << render_line_chart(all);
  }
  return results.empty() ? kExitData : kExitOk;
}

// ----- nth-year ------------------------------------------------------------

int cmd_nth_year(const RunConfig& rc, const Loaded& in, std::ostream& out, std::ostream& err) {
  const auto opts = options_of(rc);
  const auto [n_lo, n_hi] = parse_n_range(rc.n_range);
  const int from = rc.from_year.value_or(2010);
  const int to = rc.to_year.value_or(2018);
  if (from > to) throw UsageError("--from-year after --to-year");
  const PppTable ppp(in.config.ecosystems);

  struct NSeries {
    int n;
    IndicatorSeries series;
  };
  std::vector<NSeries> results;
  for (const auto& eco : selected_ecosystems(rc, in.config)) {
    for (int n = n_lo; n <= n_hi; ++n) {
      try {
        auto s = nth_year_series(in.dataset, eco, n, from, to, opts);
        results.push_back({n, rc.ppp ? ppp_adjust_series(s, ppp) : std::move(s)});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptySample) throw;
        report_empty(err, eco, e);
      }
    }
  }
  const Unit unit = rc.ppp ? Unit::EngineerYearsPerYear : Unit::UsdPerYear;
  if (rc.format == "csv") {
    out << "ecosystem,n,founding_year," << value_column(unit) << ",sample_count\n";
    for (const auto& [n, s] : results) {
      for (const auto& p : s.points) {
        out << csv_escape(s.ecosystem) << ',' << n << ',' << p.index << ',' << format_sig6(p.value)
            << ',' << p.sample_count << '\n';
      }
    }
  } else if (rc.format == "json") {
    Json doc{{"indicator", to_string(Indicator::NthYearSpeed)}, {"unit", to_string(unit)},
             {"series", Json::array()}};
    for (const auto& [n, s] : results) {
      doc["series"].push_back(Json{{"ecosystem", s.ecosystem}, {"nth", n}, {"points", points_json(s)}});
    }
    out << doc.dump(2) << '\n';
  } else {
    std::vector<ChartPanel> panels;
    for (const auto& eco : selected_ecosystems(rc, in.config)) {
      ChartPanel panel{eco + ": n-th year speed", "founding year", std::string(to_string(unit)), {}};
      for (const auto& [n, s] : results) {
        if (s.ecosystem != eco) continue;
        ChartLine line{"year " + std::to_string(n), {}, {}};
        for (const auto& p : s.points) {
          line.x.push_back(static_cast<double>(p.index));
          line.y.push_back(p.value);
        }
        panel.lines.push_back(std::move(line));
      }
      panels.push_back(std::move(panel));
    }
    out << render_line_chart(panels);
  }
  return results.empty() ? kExitData : kExitOk;
}

// ----- distribution --------------------------------------------------------

int cmd_distribution(const RunConfig& rc, const Loaded& in, std::ostream& out, std::ostream& err) {
  const int from = rc.from_year.value_or(2010);
  const int to = rc.to_year.value_or(2020);
  if (from > to) throw UsageError("--from-year after --to-year");
  const auto ecosystems = selected_ecosystems(rc, in.config);
  std::vector<StageDistribution> dists;
  for (const auto& eco : ecosystems) {
    try {
      dists.push_back(stage_distribution(in.dataset, eco, from, to));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptySample) throw;
      report_empty(err, eco, e);
    }
  }
  const bool pyramid = ecosystems.size() == 2 && dists.size() == 2;

  if (rc.format == "csv") {
    if (pyramid) {
      const auto table = pairwise_pyramid(dists[0], dists[1]);
      out << "view,stage,left_ecosystem,left_share,right_ecosystem,right_share\n";
      for (const bool amount : {true, false}) {
        for (const auto& row : table.rows) {
          out << (amount ? "amount" : "count") << ',' << to_string(row.stage) << ','
              << csv_escape(table.left) << ','
              << format_sig6(amount ? row.left_amount_share : row.left_count_share) << ','
              << csv_escape(table.right) << ','
              << format_sig6(amount ? row.right_amount_share : row.right_count_share) << '\n';
        }
      }
    } else {
      out << "ecosystem,stage,amount_share,count_share,amount_usd,count\n";
      for (const auto& d : dists) {
        for (FundingStage s : kAllStages) {
          out << csv_escape(d.ecosystem) << ',' << to_string(s) << ',' << format_sig6(d[s].amount_share)
              << ',' << format_sig6(d[s].count_share) << ',' << d[s].amount_usd.to_string() << ','
              << d[s].count << '\n';
        }
      }
    }
  } else if (rc.format == "json") {
    Json doc{{"indicator", to_string(Indicator::StageDistribution)}, {"unit", to_string(Unit::Share)},
             {"period", Json{{"from_year", from}, {"to_year", to}}}, {"series", Json::array()}};
    for (const bool amount : {true, false}) {
      for (const auto& d : dists) {
        Json pts = Json::array();
        for (std::size_t i = 0; i < kAllStages.size(); ++i) {
          const auto& cell = d.by_stage[i];
          Json p{{"index", i},
                 {"label", to_string(kAllStages[i])},
                 {"value", rounded_sig6(amount ? cell.amount_share : cell.count_share)},
                 {"n", amount ? cell.known_count : cell.count}};
          if (amount) p["amount_usd"] = cell.amount_usd.to_string();
          pts.push_back(std::move(p));
        }
        doc["series"].push_back(Json{{"ecosystem", d.ecosystem},
                                     {"view", amount ? "amount" : "count"},
                                     {"points", std::move(pts)}});
      }
    }
    out << doc.dump(2) << '\n';
  } else {
    if (pyramid) {
      out << render_pyramid(pairwise_pyramid(dists[0], dists[1]));
    } else if (dists.size() == 1) {
      out << render_distribution(dists[0]);
    } else {
      std::vector<ChartPanel> panels(2);
      panels[0] = {"Share of total funding amount by stage (0=Seed .. 5=SeriesE, 6=Other)",
                   "stage", "share", {}};
      panels[1] = {"Share of funding rounds by stage (0=Seed .. 5=SeriesE, 6=Other)", "stage",
                   "share", {}};
      for (const auto& d : dists) {
        ChartLine a{d.ecosystem, {}, {}}, c{d.ecosystem, {}, {}};
        for (std::size_t i = 0; i < kAllStages.size(); ++i) {
          a.x.push_back(static_cast<double>(i));
          a.y.push_back(d.by_stage[i].amount_share);
          c.x.push_back(static_cast<double>(i));
          c.y.push_back(d.by_stage[i].count_share);
        }
        panels[0].lines.push_back(std::move(a));
        panels[1].lines.push_back(std::move(c));
      }
      out << render_line_chart(panels);
    }
  }
  return dists.empty() ? kExitData : kExitOk;
}

// ----- validate ------------------------------------------------------------

int cmd_validate(const RunConfig& rc, const Loaded& in, std::ostream& out) {
  auto reasons = [](const std::vector<RawRecordError>& errors) {
    std::map<std::string, std::size_t> by;
    for (const auto& e : errors) ++by[std::string(to_string(e.reason))];
    return by;
  };
  const auto s_reasons = reasons(in.startups.errors);
  const auto r_reasons = reasons(in.rounds.errors);
  const std::size_t n_errors = in.startups.errors.size() + in.rounds.errors.size();

  if (rc.format == "json") {
    Json files = Json::array();
    auto file_json = [&](const SourceDigest& src, std::size_t records, std::size_t accepted,
                         std::size_t excluded, const std::vector<RawRecordError>& errors,
                         const std::map<std::string, std::size_t>& by) {
      Json errs = Json::array();
      for (const auto& e : errors) {
        errs.push_back(Json{{"line_or_index", e.line_or_index},
                            {"field", e.field},
                            {"reason", to_string(e.reason)},
                            {"detail", e.detail}});
      }
      return Json{{"path", src.path},     {"sha256", src.sha256}, {"records", records},
                  {"accepted", accepted}, {"excluded", excluded}, {"errors", errors.size()},
                  {"errors_by_reason", by}, {"error_list", errs}};
    };
    files.push_back(file_json(in.startups.source, in.startups.records, in.startups.startups.size(),
                              in.startups.excluded_ids.size(), in.startups.errors, s_reasons));
    files.push_back(file_json(in.rounds.source, in.rounds.records, in.rounds.rounds.size(),
                              in.rounds.excluded, in.rounds.errors, r_reasons));
    Json ecos = Json::array();
    for (const auto& e : in.config.ecosystems) {
      std::size_t rounds = 0;
      const auto members = in.dataset.in_ecosystem(e.name);
      for (const auto* s : members) rounds += in.dataset.rounds_of(s->id).size();
      ecos.push_back(Json{{"name", e.name}, {"startups", members.size()}, {"rounds", rounds}});
    }
    out << Json{{"files", files}, {"ecosystems", ecos}}.dump(2) << '\n';
  } else {
    auto file_text = [&](const char* kind, const SourceDigest& src, std::size_t records,
                         std::size_t accepted, std::size_t excluded, std::size_t errors,
                         const std::map<std::string, std::size_t>& by) {
      out << kind << ' ' << src.path << " sha256=" << src.sha256 << '\n';
      out << "  records=" << records << " accepted=" << accepted << " excluded=" << excluded
          << " errors=" << errors << '\n';
      for (const auto& [reason, n] : by) out << "  " << reason << '=' << n << '\n';
    };
    file_text("startups", in.startups.source, in.startups.records, in.startups.startups.size(),
              in.startups.excluded_ids.size(), in.startups.errors.size(), s_reasons);
    file_text("rounds", in.rounds.source, in.rounds.records, in.rounds.rounds.size(),
              in.rounds.excluded, in.rounds.errors.size(), r_reasons);
    for (const auto& e : in.config.ecosystems) {
      std::size_t rounds = 0;
      const auto members = in.dataset.in_ecosystem(e.name);
      for (const auto* s : members) rounds += in.dataset.rounds_of(s->id).size();
      out << "ecosystem " << e.name << ": startups=" << members.size() << " rounds=" << rounds << '\n';
    }
    for (const auto& e : in.startups.errors) out << "error " << error_line(e) << '\n';
    for (const auto& e : in.rounds.errors) out << "error " << error_line(e) << '\n';
  }
  return rc.strict && n_errors > 0 ? kExitData : kExitOk;
}

void add_common_options(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--startups", rc.startups_path, "startups file (CSV or .json)");
  sub->add_option("--rounds", rc.rounds_path, "funding rounds file (CSV or .json)");
  sub->add_option("--config", rc.config_path, "ecosystem/PPP/stage-map JSON")->envname("ECOINDEX_CONFIG");
  sub->add_option("--ecosystem", rc.ecosystems, "ecosystem name (repeatable; default: all)");
  sub->add_option("--from-year", rc.from_year, "first founding (or announcement) year");
  sub->add_option("--to-year", rc.to_year, "last founding (or announcement) year");
  sub->add_option("--cohorts", rc.cohorts, "early and late cohorts, Y1-Y2,Y3-Y4");
  sub->add_option("--n", rc.n_range, "n or n range N..M");
  sub->add_option("--quantile", rc.quantile, "aggregation quantile in (0,1)");
  sub->add_flag("--ppp", rc.ppp, "divide amounts by the ecosystem engineer cost");
  sub->add_option("--day-zero", rc.day_zero, "founding-day rounds")
      ->check(CLI::IsMember({"clamp", "drop"}));
  sub->add_option("--max-years", rc.max_years, "age horizon in years");
  sub->add_option("--mode", rc.mode, "acceleration mode")->check(CLI::IsMember({"cohort", "per-startup"}));
  sub->add_option("--format", rc.format, "output format")->check(CLI::IsMember({"csv", "json", "svg"}));
  sub->add_option("--out", rc.out_path, "output file (default: stdout)");
  sub->add_flag("--strict", rc.strict, "fail on any rejected input record");
}

int dispatch(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  Loaded in = load_inputs(rc, err);
  const std::size_t n_errors = in.startups.errors.size() + in.rounds.errors.size();
  if (rc.command == "validate") return cmd_validate(rc, in, out);

  if (n_errors > 0) {
    err << "warning: " << n_errors << " input record(s) rejected\n";
    for (const auto& e : in.startups.errors) err << "  " << error_line(e) << '\n';
    for (const auto& e : in.rounds.errors) err << "  " << error_line(e) << '\n';
    if (rc.strict) return kExitData;
  }
  if (rc.command == "speed") return cmd_speed(rc, in, out, err);
  if (rc.command == "acceleration") return cmd_acceleration(rc, in, out, err);
  if (rc.command == "nth-year") return cmd_nth_year(rc, in, out, err);
  return cmd_distribution(rc, in, out, err);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ecoindex: entrepreneurial-ecosystem fundraising indicators"};
  app.require_subcommand(1, 1);
  RunConfig rc;
  for (const char* name : {"validate", "speed", "acceleration", "nth-year", "distribution"}) {
    auto* sub = app.add_subcommand(name);
    add_common_options(sub, rc);
    sub->callback([&rc, name] { rc.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (rc.out_path.empty()) return dispatch(rc, out, err);
    std::ostringstream buffer;
    const int code = dispatch(rc, buffer, err);
    std::ofstream file(rc.out_path, std::ios::binary);
    if (!file || !(file << buffer.str()) || !file.flush()) {
      err << "io error: cannot write " << rc.out_path << '\n';
      return kExitIo;
    }
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << to_string(e.code()) << " error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::Io: return kExitIo;
      case ErrorCode::Usage:
      case ErrorCode::Config:
      case ErrorCode::MissingPpp:
      case ErrorCode::UnitMismatch: return kExitUsage;
      default: return kExitData;
    }
  }
}

}  // namespace ecoindex
