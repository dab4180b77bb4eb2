#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ecoindex/domain.hpp"

namespace ecoindex {

enum class InputFormat { Csv, Json };

/// Picks JSON for a ".json" extension, CSV otherwise.
InputFormat format_from_path(const std::filesystem::path& path);

enum class RecordErrorReason {
  MissingField,
  BadDate,
  BadAmount,
  UnknownStage,
  RoundBeforeFounding,
  OrphanRound,
  DuplicateId,
};

std::string_view to_string(RecordErrorReason reason);

struct RawRecordError {
  std::string file;
  std::size_t line_or_index = 0;  // CSV: 1-based line of the record; JSON: 0-based array index
  std::string field;
  RecordErrorReason reason = RecordErrorReason::MissingField;
  std::string detail;
};

/// Case-insensitive raw stage label -> canonical stage. Labels not listed fall
/// back to `fallback`; without a fallback they are rejected as UnknownStage.
struct StageMap {
  std::map<std::string, FundingStage> entries;  // keys lower-cased and trimmed
  std::optional<FundingStage> fallback = FundingStage::Other;

  static StageMap defaults();
  std::optional<FundingStage> resolve(std::string_view raw) const;
};

struct Configuration {
  std::vector<EcosystemConfig> ecosystems;
  StageMap stage_map = StageMap::defaults();

  const EcosystemConfig* find(std::string_view name) const;
};

/// Parses the JSON configuration document. Throws Error(Config) on schema
/// violations (duplicate names, non-positive divisors, unknown stages).
Configuration parse_configuration(std::string_view json_text);
Configuration load_configuration(const std::filesystem::path& path);

struct SourceDigest {
  std::string path;
  std::string sha256;
};

struct StartupLoad {
  std::vector<Startup> startups;
  std::vector<RawRecordError> errors;
  std::vector<std::string> excluded_ids;  // well-formed but outside every ecosystem
  std::vector<std::string> ambiguous_ids;  // matched more than one ecosystem
  std::size_t records = 0;
  SourceDigest source;
};

struct RoundLoad {
  std::vector<FundingRound> rounds;
  std::vector<RawRecordError> errors;
  std::size_t excluded = 0;  // reference a startup excluded by geography
  std::size_t records = 0;
  SourceDigest source;
};

StartupLoad load_startups(const std::filesystem::path& path, InputFormat format,
                          std::span<const EcosystemConfig> ecosystems);
RoundLoad load_rounds(const std::filesystem::path& path, InputFormat format,
                      const StartupLoad& startups, const StageMap& stage_map);

// In-memory variants; `source_name` is used in error records.
StartupLoad parse_startups(std::string_view text, InputFormat format, std::string_view source_name,
                           std::span<const EcosystemConfig> ecosystems);
RoundLoad parse_rounds(std::string_view text, InputFormat format, std::string_view source_name,
                       const StartupLoad& startups, const StageMap& stage_map);

/// Immutable collection of startups keyed by id with their rounds sorted by
/// announcement date.
class Dataset {
 public:
  Dataset() = default;

  /// Throws std::invalid_argument if a round references an unknown startup
  /// or ids are duplicated.
  Dataset(std::vector<Startup> startups, std::vector<FundingRound> rounds,
          std::vector<SourceDigest> provenance = {});

  const std::map<std::string, Startup>& startups() const { return startups_; }
  std::span<const FundingRound> rounds_of(std::string_view startup_id) const;
  std::size_t round_count() const;
  const std::vector<SourceDigest>& provenance() const { return provenance_; }

  /// Startups of one ecosystem, ordered by id.
  std::vector<const Startup*> in_ecosystem(std::string_view ecosystem) const;

  /// Applies `f` to every round amount; used for rescaling and pre-normalizing.
  template <typename F>
  Dataset transform_amounts(F&& f) const {
    std::vector<Startup> s;
    std::vector<FundingRound> r;
    for (const auto& [id, st] : startups_) s.push_back(st);
    for (const auto& [id, list] : rounds_) {
      for (FundingRound round : list) {
        if (round.amount_usd) round.amount_usd = f(*round.amount_usd, startups_.at(id));
        r.push_back(std::move(round));
      }
    }
    return Dataset(std::move(s), std::move(r), provenance_);
  }

 private:
  std::map<std::string, Startup> startups_;
  std::map<std::string, std::vector<FundingRound>, std::less<>> rounds_;
  std::vector<SourceDigest> provenance_;
};

Dataset make_dataset(const StartupLoad& startups, const RoundLoad& rounds);

/// Startups founded in [from_year, to_year] (inclusive) and only their rounds.
Dataset filter_founded(const Dataset& dataset, int from_year, int to_year);

/// Minimal RFC-4180 reader: comma separator, '"' quoting with "" escapes,
/// quoted fields may span lines. Returns rows with the 1-based line on which
/// each row starts.
struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};
std::vector<CsvRow> read_csv(std::string_view text);

std::string sha256_hex(std::string_view bytes);

}  // namespace ecoindex
