#pragma once

// Loads the bundled fixture under fixtures/.

#include <string>

#include "ecoindex/ingestion.hpp"

namespace fixture {

inline const std::string kDir = ECOINDEX_FIXTURE_DIR;

inline std::string path(const std::string& name) { return kDir + "/" + name; }

inline ecoindex::Dataset load(ecoindex::InputFormat format = ecoindex::InputFormat::Csv) {
  const std::string ext = format == ecoindex::InputFormat::Json ? ".json" : ".csv";
  const auto config = ecoindex::load_configuration(path("config.json"));
  const auto startups = ecoindex::load_startups(path("startups" + ext), format, config.ecosystems);
  const auto rounds = ecoindex::load_rounds(path("rounds" + ext), format, startups, config.stage_map);
  return ecoindex::make_dataset(startups, rounds);
}

}  // namespace fixture
