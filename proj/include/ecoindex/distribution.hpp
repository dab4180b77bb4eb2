#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "ecoindex/domain.hpp"
#include "ecoindex/ingestion.hpp"

namespace ecoindex {

struct StageShare {
  double amount_share = 0.0;
  double count_share = 0.0;
  Money amount_usd;
  std::size_t count = 0;        // all rounds, including unknown amounts
  std::size_t known_count = 0;  // rounds contributing to amount_usd
};

struct StageDistribution {
  std::string ecosystem;
  std::array<StageShare, kAllStages.size()> by_stage{};

  const StageShare& operator[](FundingStage s) const { return by_stage[static_cast<std::size_t>(s)]; }
  StageShare& operator[](FundingStage s) { return by_stage[static_cast<std::size_t>(s)]; }
};

/// Shares of round count and of known funding amount by stage, over rounds
/// announced in [from_year, to_year]. Throws Error(EmptySample) if no round
/// falls in the period.
StageDistribution stage_distribution(const Dataset& dataset, std::string_view ecosystem,
                                     int from_year, int to_year);

struct PyramidRow {
  FundingStage stage = FundingStage::Other;
  double left_amount_share = 0.0;
  double right_amount_share = 0.0;
  double left_count_share = 0.0;
  double right_count_share = 0.0;
};

struct PyramidTable {
  std::string left;
  std::string right;
  std::vector<PyramidRow> rows;  // Seed .. SeriesE, Other
};

PyramidTable pairwise_pyramid(const StageDistribution& left, const StageDistribution& right);

}  // namespace ecoindex
