#include "ecoindex/distribution.hpp"

namespace ecoindex {

StageDistribution stage_distribution(const Dataset& dataset, std::string_view ecosystem,
                                     int from_year, int to_year) {
  if (from_year > to_year) throw Error(ErrorCode::Usage, "period start year after end year");
  StageDistribution dist;
  dist.ecosystem = std::string(ecosystem);
  std::size_t total_count = 0;
  Money total_amount;
  for (const Startup* s : dataset.in_ecosystem(ecosystem)) {
    for (const auto& r : dataset.rounds_of(s->id)) {
      const int year = static_cast<int>(r.announced.year());
      if (year < from_year || year > to_year) continue;
      auto& cell = dist[r.stage];
      ++cell.count;
      ++total_count;
      if (r.amount_usd) {
        cell.amount_usd += *r.amount_usd;
        ++cell.known_count;
        total_amount += *r.amount_usd;
      }
    }
  }
  if (total_count == 0) {
    throw Error(ErrorCode::EmptySample, "no rounds announced in " + std::to_string(from_year) + "-" +
                                            std::to_string(to_year) + " for '" +
                                            std::string(ecosystem) + "'");
  }
  const double amount_total = total_amount.to_double();
  for (auto& cell : dist.by_stage) {
    cell.count_share = static_cast<double>(cell.count) / static_cast<double>(total_count);
    if (amount_total > 0.0) cell.amount_share = cell.amount_usd.to_double() / amount_total;
  }
  return dist;
}

PyramidTable pairwise_pyramid(const StageDistribution& left, const StageDistribution& right) {
  PyramidTable table{left.ecosystem, right.ecosystem, {}};
  for (FundingStage s : kAllStages) {
    table.rows.push_back(PyramidRow{s, left[s].amount_share, right[s].amount_share,
                                    left[s].count_share, right[s].count_share});
  }
  return table;
}

}  // namespace ecoindex
