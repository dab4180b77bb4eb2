// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: acceptance [path/to/ecoindex]
// Without a CLI path the determinism check runs the CLI in-process.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "ecoindex/cli.hpp"
#include "ecoindex/distribution.hpp"
#include "ecoindex/indicators.hpp"
#include "ecoindex/normalization.hpp"
#include "fixture.hpp"
#include "json.hpp"
#include "oracle.hpp"
#include "synthetic.hpp"

using namespace ecoindex;

namespace {

class Tally {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void near(double got, double want, double rel, const std::string& what) {
    const double err = std::abs(got - want);
    const bool ok = err <= rel * std::max(std::abs(got), std::abs(want));
    if (!ok) {
      char buf[160];
      std::snprintf(buf, sizeof buf, " got %.17g want %.17g", got, want);
      expect(false, what + buf);
    } else {
      expect(true, what);
    }
  }
  bool ok() const { return failed_ == 0 && checks_ > 0; }
  std::string summary() const {
    std::string s = std::to_string(checks_ - failed_) + "/" + std::to_string(checks_) + " checks";
    for (const auto& f : failures_) s += "; " + f;
    return s;
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
};

std::string cli_path;

// ----- 1 ---------------------------------------------------------------------

void binning(Tally& t) {
  t.expect(assign_bin(200).index == 1, "assign_bin(200) == 1");
  t.expect(assign_bin(420).index == 2, "assign_bin(420) == 2");
  t.expect(assign_bin(200).label() == "6-12m", "bin 1 label is 6-12m");
}

// ----- 2 ---------------------------------------------------------------------

void oracle_equivalence(Tally& t) {
  const auto ds = synthetic::random_dataset(20240601, {.startups = 50});
  const auto flat = oracle::flatten(ds);
  constexpr double tol = 1e-9;
  for (const auto& eco : synthetic::ecosystems()) {
    for (double q : {0.5, 0.1}) {
      const IndicatorOptions opts{QuantileSpec(q)};
      const std::string tag = eco + " q=" + std::to_string(q);

      const auto ws = oracle::speed(flat, eco, q, 5.0);
      const auto gs = ecosystem_speed(ds, eco, opts);
      t.expect(gs.points.size() == ws.size(), tag + " speed bin count");
      for (const auto& p : gs.points) {
        t.expect(ws.contains(p.index), tag + " speed bin present");
        if (ws.contains(p.index)) t.near(p.value, ws.at(p.index).value, tol, tag + " speed");
      }

      const auto wa = oracle::acceleration(flat, eco, q, 5.0);
      const auto ga = ecosystem_acceleration(ds, eco, opts);
      t.expect(ga.points.size() == wa.size(), tag + " acceleration bin count");
      for (const auto& p : ga.points) {
        if (wa.contains(p.index)) t.near(p.value, wa.at(p.index).value, tol, tag + " acceleration");
        else t.expect(false, tag + " acceleration bin present");
      }

      for (bool percent : {false, true}) {
        const auto wc = oracle::cohort(flat, eco, 2008, 2011, 2013, 2016, q, 5.0, percent);
        const auto gc = cohort_acceleration(ds, eco, Cohort(2008, 2011), Cohort(2013, 2016), opts,
                                            percent ? AccelerationMode::Percent : AccelerationMode::Absolute);
        t.expect(gc.points.size() == wc.size(), tag + " cohort bin count");
        for (const auto& p : gc.points) {
          if (wc.contains(p.index)) t.near(p.value, wc.at(p.index), tol, tag + " cohort");
          else t.expect(false, tag + " cohort bin present");
        }
      }

      for (int n = 1; n <= 4; ++n) {
        for (int y = 2008; y <= 2019; ++y) {
          const auto w = oracle::nth_year(flat, eco, y, n, q);
          try {
            const auto g = nth_year_speed(ds, eco, y, n, opts);
            t.expect(w.has_value(), tag + " nth-year unexpected value");
            if (w) t.near(g.value_usd_per_year, w->value, tol, tag + " nth-year");
          } catch (const Error& e) {
            t.expect(!w && e.code() == ErrorCode::EmptySample, tag + " nth-year empty");
          }
        }
      }
    }
    for (auto [from, to] : {std::pair{2008, 2030}, std::pair{2010, 2018}}) {
      const auto w = oracle::distribution(flat, eco, from, to);
      if (!w) continue;
      const auto g = stage_distribution(ds, eco, from, to);
      for (std::size_t i = 0; i < kAllStages.size(); ++i) {
        if (w->amount[i] == 0) t.expect(g.by_stage[i].amount_share == 0, eco + " amount share zero");
        else t.near(g.by_stage[i].amount_share, w->amount[i], tol, eco + " amount share");
        if (w->count[i] == 0) t.expect(g.by_stage[i].count_share == 0, eco + " count share zero");
        else t.near(g.by_stage[i].count_share, w->count[i], tol, eco + " count share");
      }
    }
  }
}

// ----- 3 ---------------------------------------------------------------------

void scale_equivariance(Tally& t) {
  const auto ds = synthetic::random_dataset(424242);
  constexpr double tol = 1e-12;
  const Cohort early(2008, 2012), late(2014, 2019);
  for (auto [num, den] : {std::pair<std::int64_t, std::int64_t>{1, 2}, {3, 1}, {1'000'000, 1}}) {
    const double c = static_cast<double>(num) / static_cast<double>(den);
    const auto scaled = synthetic::rescale(ds, num, den);
    const std::string tag = "c=" + std::to_string(c);
    for (const auto& eco : synthetic::ecosystems()) {
      const auto a = ecosystem_speed(ds, eco), b = ecosystem_speed(scaled, eco);
      t.expect(a.points.size() == b.points.size(), tag + " speed size");
      for (std::size_t i = 0; i < std::min(a.points.size(), b.points.size()); ++i) {
        t.near(b.points[i].value, c * a.points[i].value, tol, tag + " speed");
      }
      const auto x = ecosystem_acceleration(ds, eco), y = ecosystem_acceleration(scaled, eco);
      for (std::size_t i = 0; i < std::min(x.points.size(), y.points.size()); ++i) {
        t.near(y.points[i].value, c * x.points[i].value, tol, tag + " per-startup acceleration");
      }
      for (auto mode : {AccelerationMode::Absolute, AccelerationMode::Percent}) {
        const auto p = cohort_acceleration(ds, eco, early, late, {}, mode);
        const auto q = cohort_acceleration(scaled, eco, early, late, {}, mode);
        t.expect(p.points.size() == q.points.size(), tag + " cohort size");
        const double k = mode == AccelerationMode::Absolute ? c : 1.0;
        for (std::size_t i = 0; i < std::min(p.points.size(), q.points.size()); ++i) {
          t.near(q.points[i].value, k * p.points[i].value, tol,
                 tag + (mode == AccelerationMode::Absolute ? " absolute" : " percent"));
        }
      }
      const auto d1 = stage_distribution(ds, eco, 2000, 2040);
      const auto d2 = stage_distribution(scaled, eco, 2000, 2040);
      for (std::size_t i = 0; i < kAllStages.size(); ++i) {
        t.near(d2.by_stage[i].amount_share, d1.by_stage[i].amount_share, tol, tag + " amount share");
        t.expect(d2.by_stage[i].count_share == d1.by_stage[i].count_share, tag + " count share");
      }
    }
  }
}

// ----- 4 ---------------------------------------------------------------------

void ppp_commutation(Tally& t) {
  const auto ds = synthetic::random_dataset(777);
  PppTable table, ones;
  const std::map<std::string, double> cost = {{"Alpha", 100'000}, {"Beta", 125'000}, {"Gamma", 80'000}};
  for (const auto& [eco, d] : cost) {
    table.set(eco, d);
    ones.set(eco, 1.0);
  }
  const auto divided = ds.transform_amounts([&](const Money& m, const Startup& s) {
    const auto d = static_cast<Money::Rep>(cost.at(s.ecosystem));
    if (m.micros() % d != 0) throw std::logic_error("fixture amount not divisible");
    return Money::from_micros(m.micros() / d);
  });
  for (const auto& eco : synthetic::ecosystems()) {
    const auto after = ppp_adjust_series(ecosystem_speed(ds, eco), table);
    const auto before = ecosystem_speed(divided, eco);
    t.expect(after.points.size() == before.points.size(), eco + " size");
    for (std::size_t i = 0; i < std::min(after.points.size(), before.points.size()); ++i) {
      t.near(after.points[i].value, before.points[i].value, 1e-12, eco + " commutation");
    }
    const auto raw = ecosystem_speed(ds, eco);
    const auto same = ppp_adjust_series(raw, ones);
    for (std::size_t i = 0; i < raw.points.size(); ++i) {
      t.expect(same.points[i].value == raw.points[i].value, eco + " identity divisor");
    }
  }
}

// ----- 5 ---------------------------------------------------------------------

void quantile_oracle(Tally& t) {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> u(0.0, 1e7);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    std::vector<double> v(n);
    for (auto& x : v) x = (rng() % 5 == 0) ? std::floor(u(rng) / 1e6) : u(rng);
    for (double q : {0.5, 0.1}) {
      auto sorted = v;
      std::sort(sorted.begin(), sorted.end());
      const double h = q * static_cast<double>(n - 1);
      const auto lo = static_cast<std::size_t>(std::floor(h));
      const std::size_t hi = std::min(lo + 1, n - 1);
      const double want = sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
      const double got = quantile(v, QuantileSpec(q));
      if (want == 0) t.expect(got == 0, "quantile of zeros");
      else t.near(got, want, 1e-12, "quantile n=" + std::to_string(n));
    }
  }
  t.expect(quantile(std::vector<double>{1, 2, 3, 4}) == 2.5, "median of [1,2,3,4] is 2.5");
}

// ----- 6 ---------------------------------------------------------------------

void cohort_identity(Tally& t) {
  const Cohort early(2010, 2012), late(2014, 2016);
  const IndicatorSeries e{"E", Indicator::Speed, Unit::UsdPerYear, {{3, "18-24m", 1.0e6, 1}}, {}};
  const IndicatorSeries l{"E", Indicator::Speed, Unit::UsdPerYear, {{3, "18-24m", 2.0e6, 1}}, {}};
  t.expect(early.midpoint() == 2011 && late.midpoint() == 2015, "midpoints 2011/2015");
  const auto abs = cohort_difference(e, l, early, late, AccelerationMode::Absolute);
  const auto pct = cohort_difference(e, l, early, late, AccelerationMode::Percent);
  t.expect(abs.points.size() == 1 && abs.points[0].value == 0.25, "planted pair gives 0.25");
  t.expect(pct.points.size() == 1 && pct.points[0].value == 100.0, "planted pair gives 100%");

  // Identical series, and a dataset whose late cohort replays the early one four years on.
  const auto fixture_speed = ecosystem_speed(fixture::load(), "Berlin");
  for (auto mode : {AccelerationMode::Absolute, AccelerationMode::Percent}) {
    for (const auto& p : cohort_difference(fixture_speed, fixture_speed, early, late, mode).points) {
      t.expect(p.value == 0.0, "identical series give zero");
    }
  }
  const auto base = synthetic::random_dataset(606, {.startups = 40, .first_year = 2010, .last_year = 2012});
  std::vector<Startup> st;
  std::vector<FundingRound> r;
  for (const auto& [id, s] : base.startups()) {
    Startup copy = s;
    copy.id = id + "-late";
    copy.founded = synthetic::add_days(s.founded, 1461);
    st.push_back(s);
    st.push_back(copy);
    for (auto rd : base.rounds_of(id)) {
      r.push_back(rd);
      rd.startup_id = copy.id;
      rd.announced = synthetic::add_days(rd.announced, 1461);
      r.push_back(rd);
    }
  }
  const Dataset replay(st, r);
  for (const auto& eco : synthetic::ecosystems()) {
    for (auto mode : {AccelerationMode::Absolute, AccelerationMode::Percent}) {
      const auto s = cohort_acceleration(replay, eco, early, late, {}, mode);
      t.expect(!s.points.empty(), eco + " replay has points");
      for (const auto& p : s.points) t.expect(p.value == 0.0, eco + " identical cohorts give zero");
    }
  }
}

// ----- 7 ---------------------------------------------------------------------

void conservation(Tally& t) {
  std::ifstream in(fixture::path("MANIFEST.json"));
  const auto manifest = nlohmann::json::parse(in);
  const auto config = load_configuration(fixture::path("config.json"));
  for (auto format : {InputFormat::Csv, InputFormat::Json}) {
    const std::string ext = format == InputFormat::Json ? ".json" : ".csv";
    const auto s = load_startups(fixture::path("startups" + ext), format, config.ecosystems);
    const auto r = load_rounds(fixture::path("rounds" + ext), format, s, config.stage_map);
    t.expect(s.startups.size() + s.excluded_ids.size() + s.errors.size() == s.records, ext + " startups conserve");
    t.expect(r.rounds.size() + r.excluded + r.errors.size() == r.records, ext + " rounds conserve");

    auto by_reason = [](const std::vector<RawRecordError>& errors) {
      nlohmann::json j = nlohmann::json::object();
      for (const auto& e : errors) {
        const std::string k(to_string(e.reason));
        j[k] = j.value(k, 0) + 1;
      }
      return j;
    };
    const auto& ms = manifest["startups"];
    t.expect(ms["records"] == s.records && ms["accepted"] == s.startups.size() &&
                 ms["excluded"] == s.excluded_ids.size() && ms["errors"] == s.errors.size(),
             ext + " startup counts match manifest");
    t.expect(ms["errors_by_reason"] == by_reason(s.errors), ext + " startup reasons match manifest");
    const auto& mr = manifest["rounds"];
    std::size_t unknown = 0;
    for (const auto& rd : r.rounds) unknown += rd.amount_usd ? 0 : 1;
    t.expect(mr["records"] == r.records && mr["accepted"] == r.rounds.size() && mr["excluded"] == r.excluded &&
                 mr["errors"] == r.errors.size() && mr["unknown_amount"] == unknown,
             ext + " round counts match manifest");
    t.expect(mr["errors_by_reason"] == by_reason(r.errors), ext + " round reasons match manifest");

    const auto ds = make_dataset(s, r);
    for (const auto& [name, want] : manifest["ecosystems"].items()) {
      const auto members = ds.in_ecosystem(name);
      std::size_t rounds = 0;
      for (const auto* m : members) rounds += ds.rounds_of(m->id).size();
      t.expect(want["startups"] == members.size() && want["rounds"] == rounds, ext + " " + name + " counts");
    }
  }
}

// ----- 8 ---------------------------------------------------------------------

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_command(const std::vector<std::string>& args) {
  CliResult r;
  if (cli_path.empty()) {
    std::ostringstream out, err;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    return r;
  }
  std::string cmd = "'" + cli_path + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void determinism(Tally& t) {
  const std::vector<std::string> inputs = {"--startups", fixture::path("startups.csv"), "--rounds",
                                           fixture::path("rounds.csv"), "--config", fixture::path("config.json")};
  const std::vector<std::vector<std::string>> commands = {
      {"speed"},
      {"speed", "--ppp"},
      {"acceleration"},
      {"acceleration", "--mode", "per-startup"},
      {"nth-year"},
      {"distribution"},
      {"distribution", "--ecosystem", "Berlin", "--ecosystem", "London"},
  };
  auto args_for = [&](std::vector<std::string> cmd, const std::string& format) {
    cmd.insert(cmd.end(), inputs.begin(), inputs.end());
    cmd.insert(cmd.end(), {"--format", format});
    return cmd;
  };

  // validate prints plain text by default; csv selects that same layout.
  for (const char* format : {"csv", "json"}) {
    const auto a = run_command(args_for({"validate"}, format));
    const auto b = run_command(args_for({"validate"}, format));
    t.expect(a.code == 0 && a.out == b.out && !a.out.empty(), std::string("validate ") + format + " repeatable");
  }

  for (const auto& cmd : commands) {
    std::string tag;
    for (const auto& part : cmd) tag += part + " ";
    const auto csv1 = run_command(args_for(cmd, "csv"));
    const auto csv2 = run_command(args_for(cmd, "csv"));
    const auto json1 = run_command(args_for(cmd, "json"));
    const auto json2 = run_command(args_for(cmd, "json"));
    t.expect(csv1.code == 0 && json1.code == 0, tag + "exit 0");
    t.expect(csv1.out == csv2.out && !csv1.out.empty(), tag + "csv byte-identical");
    t.expect(json1.out == json2.out && !json1.out.empty(), tag + "json byte-identical");

    // Values keyed by (ecosystem, series, point) must agree exactly.
    std::multiset<double> from_json, from_csv;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json1.out);
    } catch (const std::exception&) {
      t.expect(false, tag + "json parses");
      continue;
    }
    for (const auto& s : doc["series"]) {
      for (const auto& p : s["points"]) from_json.insert(p["value"].get<double>());
    }
    const auto rows = read_csv(csv1.out);
    const std::string& head = rows.empty() ? std::string() : rows[0].fields[0];
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto& f = rows[i].fields;
      std::vector<std::size_t> cols = {3};
      if (cmd[0] == "acceleration") cols = {4};
      else if (cmd[0] == "distribution" && head == "view") cols = {3, 5};
      else if (cmd[0] == "distribution") cols = {2, 3};
      for (auto c : cols) from_csv.insert(std::strtod(f[c].c_str(), nullptr));
    }
    t.expect(!from_csv.empty() && from_csv == from_json, tag + "json and csv values agree");
  }
}

// ----- 9 ---------------------------------------------------------------------

void figure_shape(Tally& t) {
  const auto ds = fixture::load();
  const auto berlin = ecosystem_speed(ds, "Berlin");
  const auto london = ecosystem_speed(ds, "London");
  std::map<std::int64_t, double> ldn;
  for (const auto& p : london.points) ldn[p.index] = p.value;
  int compared = 0;
  for (const auto& p : berlin.points) {
    if (p.index > 3 || !ldn.contains(p.index)) continue;
    ++compared;
    t.expect(p.value > ldn[p.index], "Berlin speed above London in bin " + std::to_string(p.index));
  }
  t.expect(compared >= 3, "at least three early bins compared");
  const auto db = stage_distribution(ds, "Berlin", 2010, 2020);
  const auto dl = stage_distribution(ds, "London", 2010, 2020);
  const double b = db[FundingStage::SeriesD].amount_share + db[FundingStage::SeriesE].amount_share;
  const double l = dl[FundingStage::SeriesD].amount_share + dl[FundingStage::SeriesE].amount_share;
  t.expect(b > l, "Berlin SeriesD+E amount share above London");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  const std::vector<std::pair<std::string, std::function<void(Tally&)>>> criteria = {
      {"binning worked examples", binning},
      {"oracle equivalence, 50-startup seeded fixture, 1e-9", oracle_equivalence},
      {"scale equivariance, c in {0.5, 3, 1e6}, 1e-12", scale_equivariance},
      {"PPP commutation and identity divisor, 1e-12", ppp_commutation},
      {"quantile against sort reference, 1000 multisets, 1e-12", quantile_oracle},
      {"cohort acceleration identity and planted pair", cohort_identity},
      {"ingestion conservation against fixture manifest", conservation},
      {"CLI determinism and JSON/CSV agreement", determinism},
      {"Berlin-like vs London-like figure shape", figure_shape},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Tally t;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(t);
    } catch (const std::exception& e) {
      t.expect(false, std::string("exception: ") + e.what());
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!t.ok()) ++failed;
    std::printf("[%s] %zu %s (%.0f ms): %s\n", t.ok() ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), ms,
                t.summary().c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
