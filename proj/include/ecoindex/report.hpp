#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ecoindex/distribution.hpp"
#include "ecoindex/domain.hpp"

namespace ecoindex {

/// Six significant digits, '.' separator, no exponent and no grouping.
/// Trailing fractional zeros are dropped ("1826250", "2739.73", "0.25").
std::string format_sig6(double value);

/// Value as it appears in CSV/JSON output (format_sig6 parsed back).
double rounded_sig6(double value);

std::string csv_escape(std::string_view field);
std::string xml_escape(std::string_view text);

struct ChartLine {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartLine> lines;
};

/// Panels stacked vertically in one SVG document; each line gets a legend
/// entry and a <g class="series" data-name="..."> group.
std::string render_line_chart(const std::vector<ChartPanel>& panels);

/// Back-to-back horizontal bars: amount shares on top, round-count shares
/// below, left ecosystem extending left.
std::string render_pyramid(const PyramidTable& table);

/// One-sided bar chart for a single ecosystem's distribution.
std::string render_distribution(const StageDistribution& dist);

}  // namespace ecoindex
