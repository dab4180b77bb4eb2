#include "ecoindex/ingestion.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace ecoindex {

namespace {

using nlohmann::json;

std::string trim_lower(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error while reading file: " + path.string());
  return ss.str();
}

std::string strip_bom(std::string_view text) {
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
    text.remove_prefix(3);
  }
  return std::string(text);
}

// One input record as named string fields; absent keys map to nullopt.
struct Record {
  std::size_t position = 0;
  std::map<std::string, std::optional<std::string>> fields;

  std::string get(const std::string& key) const {
    auto it = fields.find(key);
    if (it == fields.end() || !it->second) return {};
    return std::string(trim(*it->second));
  }
};

std::vector<Record> csv_records(std::string_view text, std::string_view source,
                                std::span<const std::string_view> required) {
  const std::string body = strip_bom(text);
  auto rows = read_csv(body);
  if (rows.empty()) throw Error(ErrorCode::Io, std::string(source) + ": missing CSV header");
  std::vector<std::string> header;
  for (const auto& h : rows.front().fields) header.push_back(trim_lower(h));
  for (auto col : required) {
    if (std::find(header.begin(), header.end(), col) == header.end()) {
      throw Error(ErrorCode::Io,
                  std::string(source) + ": CSV header lacks column '" + std::string(col) + "'");
    }
  }
  std::vector<Record> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    // A blank physical line is not a record.
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;
    Record rec;
    rec.position = row.line;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c < row.fields.size()) rec.fields[header[c]] = row.fields[c];
      else rec.fields[header[c]] = std::nullopt;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::optional<std::string> json_scalar(const json& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  // Shortest round-trip rendering; exponent forms are later rejected as BadAmount.
  return v.dump();
}

std::vector<Record> json_records(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Io, std::string(source) + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::Io, std::string(source) + ": expected a JSON array");
  std::vector<Record> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    Record rec;
    rec.position = i;
    if (doc[i].is_object()) {
      for (auto it = doc[i].begin(); it != doc[i].end(); ++it) {
        rec.fields[trim_lower(it.key())] = json_scalar(it.value());
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<Record> records_of(std::string_view text, InputFormat format, std::string_view source,
                               std::span<const std::string_view> required) {
  return format == InputFormat::Csv ? csv_records(text, source, required)
                                    : json_records(text, source);
}

RawRecordError make_error(std::string_view source, const Record& rec, std::string field,
                          RecordErrorReason reason, std::string detail = {}) {
  return RawRecordError{std::string(source), rec.position, std::move(field), reason,
                        std::move(detail)};
}

constexpr std::string_view kStartupColumns[] = {"id", "name", "founded", "city", "region",
                                                "country"};
constexpr std::string_view kRoundColumns[] = {"startup_id", "announced", "amount_usd", "stage"};

}  // namespace

InputFormat format_from_path(const std::filesystem::path& path) {
  return trim_lower(path.extension().string()) == ".json" ? InputFormat::Json : InputFormat::Csv;
}

std::string_view to_string(RecordErrorReason reason) {
  switch (reason) {
    case RecordErrorReason::MissingField: return "MissingField";
    case RecordErrorReason::BadDate: return "BadDate";
    case RecordErrorReason::BadAmount: return "BadAmount";
    case RecordErrorReason::UnknownStage: return "UnknownStage";
    case RecordErrorReason::RoundBeforeFounding: return "RoundBeforeFounding";
    case RecordErrorReason::OrphanRound: return "OrphanRound";
    case RecordErrorReason::DuplicateId: return "DuplicateId";
  }
  return "Unknown";
}

StageMap StageMap::defaults() {
  StageMap m;
  m.entries = {
      {"seed", FundingStage::Seed},         {"angel", FundingStage::Seed},
      {"pre-seed", FundingStage::Seed},     {"pre_seed", FundingStage::Seed},
      {"series a", FundingStage::SeriesA},  {"series_a", FundingStage::SeriesA},
      {"series b", FundingStage::SeriesB},  {"series_b", FundingStage::SeriesB},
      {"series c", FundingStage::SeriesC},  {"series_c", FundingStage::SeriesC},
      {"series d", FundingStage::SeriesD},  {"series_d", FundingStage::SeriesD},
      {"series e", FundingStage::SeriesE},  {"series_e", FundingStage::SeriesE},
  };
  m.fallback = FundingStage::Other;
  return m;
}

std::optional<FundingStage> StageMap::resolve(std::string_view raw) const {
  if (auto it = entries.find(trim_lower(raw)); it != entries.end()) return it->second;
  return fallback;
}

const EcosystemConfig* Configuration::find(std::string_view name) const {
  for (const auto& e : ecosystems) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Configuration parse_configuration(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Config, std::string("invalid configuration JSON: ") + e.what());
  }
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::Config, "configuration: " + msg); };
  if (!doc.is_object()) fail("top level must be an object");

  Configuration cfg;
  if (!doc.contains("ecosystems") || !doc["ecosystems"].is_array()) fail("'ecosystems' array required");
  std::set<std::string> names;
  for (const auto& e : doc["ecosystems"]) {
    if (!e.is_object()) fail("ecosystem entries must be objects");
    EcosystemConfig eco;
    if (!e.contains("name") || !e["name"].is_string() || e["name"].get<std::string>().empty()) {
      fail("ecosystem without a name");
    }
    eco.name = e["name"].get<std::string>();
    if (!names.insert(eco.name).second) fail("duplicate ecosystem name '" + eco.name + "'");
    if (!e.contains("ppp_divisor_usd") || !e["ppp_divisor_usd"].is_number()) {
      fail("ecosystem '" + eco.name + "' lacks numeric ppp_divisor_usd");
    }
    eco.ppp_divisor_usd = e["ppp_divisor_usd"].get<double>();
    if (!(eco.ppp_divisor_usd > 0.0)) fail("ecosystem '" + eco.name + "' ppp_divisor_usd must be > 0");
    if (e.contains("match")) {
      const auto& m = e["match"];
      if (!m.is_object()) fail("ecosystem '" + eco.name + "' match must be an object");
      auto list = [&](const char* key, std::vector<std::string>& dst) {
        if (!m.contains(key)) return;
        if (!m[key].is_array()) fail(std::string("match.") + key + " must be an array");
        for (const auto& v : m[key]) {
          if (!v.is_string()) fail(std::string("match.") + key + " entries must be strings");
          dst.push_back(v.get<std::string>());
        }
      };
      list("cities", eco.match.cities);
      list("regions", eco.match.regions);
      list("countries", eco.match.countries);
    }
    cfg.ecosystems.push_back(std::move(eco));
  }

  if (doc.contains("stage_map")) {
    const auto& sm = doc["stage_map"];
    if (!sm.is_object()) fail("'stage_map' must be an object");
    for (auto it = sm.begin(); it != sm.end(); ++it) {
      std::optional<FundingStage> stage;
      if (!it.value().is_null()) {
        if (!it.value().is_string()) fail("stage_map values must be stage names or null");
        stage = parse_stage_name(it.value().get<std::string>());
        if (!stage) fail("stage_map: unknown canonical stage '" + it.value().get<std::string>() + "'");
      }
      if (it.key() == "*") {
        cfg.stage_map.fallback = stage;
      } else if (stage) {
        cfg.stage_map.entries[trim_lower(it.key())] = *stage;
      } else {
        cfg.stage_map.entries.erase(trim_lower(it.key()));
      }
    }
  }
  return cfg;
}

Configuration load_configuration(const std::filesystem::path& path) {
  return parse_configuration(read_file(path));
}

std::vector<CsvRow> read_csv(std::string_view text) {
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  std::size_t line = 1;
  row.line = 1;
  bool in_quotes = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    row_open = true;
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        row.fields.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        break;
      case '\n':
        row.fields.push_back(std::move(field));
        field.clear();
        rows.push_back(std::move(row));
        row = CsvRow{};
        row.line = ++line;
        row_open = false;
        break;
      default:
        field.push_back(c);
    }
  }
  if (row_open) {
    row.fields.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

StartupLoad parse_startups(std::string_view text, InputFormat format, std::string_view source,
                           std::span<const EcosystemConfig> ecosystems) {
  StartupLoad out;
  out.source = {std::string(source), sha256_hex(text)};
  const auto records = records_of(text, format, source, kStartupColumns);
  out.records = records.size();
  std::unordered_set<std::string> seen;
  for (const auto& rec : records) {
    const std::string id = rec.get("id");
    const std::string founded_text = rec.get("founded");
    if (id.empty()) {
      out.errors.push_back(make_error(source, rec, "id", RecordErrorReason::MissingField));
      continue;
    }
    if (founded_text.empty()) {
      out.errors.push_back(make_error(source, rec, "founded", RecordErrorReason::MissingField));
      continue;
    }
    const auto founded = parse_date(founded_text);
    if (!founded) {
      out.errors.push_back(
          make_error(source, rec, "founded", RecordErrorReason::BadDate, founded_text));
      continue;
    }
    if (!seen.insert(id).second) {
      out.errors.push_back(make_error(source, rec, "id", RecordErrorReason::DuplicateId, id));
      continue;
    }
    const std::string city = rec.get("city");
    const std::string region = rec.get("region");
    const std::string country = rec.get("country");
    const EcosystemConfig* match = nullptr;
    std::size_t matches = 0;
    for (const auto& eco : ecosystems) {
      if (eco.match.accepts(city, region, country)) {
        if (!match) match = &eco;
        ++matches;
      }
    }
    if (!match) {
      out.excluded_ids.push_back(id);
      continue;
    }
    if (matches > 1) out.ambiguous_ids.push_back(id);
    out.startups.push_back(Startup{id, rec.get("name"), *founded, match->name});
  }
  return out;
}

RoundLoad parse_rounds(std::string_view text, InputFormat format, std::string_view source,
                       const StartupLoad& startups, const StageMap& stage_map) {
  RoundLoad out;
  out.source = {std::string(source), sha256_hex(text)};
  const auto records = records_of(text, format, source, kRoundColumns);
  out.records = records.size();

  std::unordered_map<std::string, const Startup*> by_id;
  for (const auto& s : startups.startups) by_id.emplace(s.id, &s);
  const std::unordered_set<std::string> excluded(startups.excluded_ids.begin(),
                                                 startups.excluded_ids.end());

  for (const auto& rec : records) {
    const std::string startup_id = rec.get("startup_id");
    const std::string announced_text = rec.get("announced");
    const std::string amount_text = rec.get("amount_usd");
    if (startup_id.empty()) {
      out.errors.push_back(make_error(source, rec, "startup_id", RecordErrorReason::MissingField));
      continue;
    }
    if (announced_text.empty()) {
      out.errors.push_back(make_error(source, rec, "announced", RecordErrorReason::MissingField));
      continue;
    }
    const auto announced = parse_date(announced_text);
    if (!announced) {
      out.errors.push_back(
          make_error(source, rec, "announced", RecordErrorReason::BadDate, announced_text));
      continue;
    }
    std::optional<Money> amount;
    if (!amount_text.empty()) {
      amount = Money::parse(amount_text);
      if (!amount) {
        out.errors.push_back(
            make_error(source, rec, "amount_usd", RecordErrorReason::BadAmount, amount_text));
        continue;
      }
    }
    const std::string raw_stage = rec.get("stage");
    const auto stage = stage_map.resolve(raw_stage);
    if (!stage) {
      out.errors.push_back(
          make_error(source, rec, "stage", RecordErrorReason::UnknownStage, raw_stage));
      continue;
    }
    auto it = by_id.find(startup_id);
    if (it == by_id.end()) {
      if (excluded.contains(startup_id)) {
        ++out.excluded;
      } else {
        out.errors.push_back(
            make_error(source, rec, "startup_id", RecordErrorReason::OrphanRound, startup_id));
      }
      continue;
    }
    if (elapsed_days(it->second->founded, *announced) < 0) {
      out.errors.push_back(make_error(source, rec, "announced",
                                      RecordErrorReason::RoundBeforeFounding, announced_text));
      continue;
    }
    out.rounds.push_back(FundingRound{startup_id, *announced, amount, *stage});
  }
  return out;
}

StartupLoad load_startups(const std::filesystem::path& path, InputFormat format,
                          std::span<const EcosystemConfig> ecosystems) {
  return parse_startups(read_file(path), format, path.string(), ecosystems);
}

RoundLoad load_rounds(const std::filesystem::path& path, InputFormat format,
                      const StartupLoad& startups, const StageMap& stage_map) {
  return parse_rounds(read_file(path), format, path.string(), startups, stage_map);
}

Dataset::Dataset(std::vector<Startup> startups, std::vector<FundingRound> rounds,
                 std::vector<SourceDigest> provenance)
    : provenance_(std::move(provenance)) {
  for (auto& s : startups) {
    if (s.id.empty()) throw std::invalid_argument("startup with empty id");
    const std::string id = s.id;
    if (!startups_.emplace(id, std::move(s)).second) {
      throw std::invalid_argument("duplicate startup id '" + id + "'");
    }
  }
  for (auto& r : rounds) {
    if (!startups_.contains(r.startup_id)) {
      throw std::invalid_argument("round references unknown startup '" + r.startup_id + "'");
    }
    auto key = r.startup_id;
    rounds_[key].push_back(std::move(r));
  }
  for (auto& [id, list] : rounds_) {
    std::stable_sort(list.begin(), list.end(), [](const FundingRound& a, const FundingRound& b) {
      return std::chrono::sys_days{a.announced} < std::chrono::sys_days{b.announced};
    });
  }
}

std::span<const FundingRound> Dataset::rounds_of(std::string_view startup_id) const {
  auto it = rounds_.find(startup_id);
  if (it == rounds_.end()) return {};
  return it->second;
}

std::size_t Dataset::round_count() const {
  std::size_t n = 0;
  for (const auto& [id, list] : rounds_) n += list.size();
  return n;
}

std::vector<const Startup*> Dataset::in_ecosystem(std::string_view ecosystem) const {
  std::vector<const Startup*> out;
  for (const auto& [id, s] : startups_) {
    if (s.ecosystem == ecosystem) out.push_back(&s);
  }
  return out;
}

Dataset make_dataset(const StartupLoad& startups, const RoundLoad& rounds) {
  return Dataset(startups.startups, rounds.rounds, {startups.source, rounds.source});
}

Dataset filter_founded(const Dataset& dataset, int from_year, int to_year) {
  std::vector<Startup> keep;
  std::vector<FundingRound> rounds;
  for (const auto& [id, s] : dataset.startups()) {
    const int year = static_cast<int>(s.founded.year());
    if (year < from_year || year > to_year) continue;
    keep.push_back(s);
    for (const auto& r : dataset.rounds_of(id)) rounds.push_back(r);
  }
  return Dataset(std::move(keep), std::move(rounds), dataset.provenance());
}

}  // namespace ecoindex
