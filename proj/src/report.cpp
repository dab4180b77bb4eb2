#include "ecoindex/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>

namespace ecoindex {

std::string format_sig6(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[512];
  // The exponent after rounding to six significant digits decides the scale.
  std::snprintf(buf, sizeof buf, "%.5e", value);
  const char* e = std::strchr(buf, 'e');
  const int exponent = std::atoi(e + 1);
  const int decimals = std::max(0, 5 - exponent);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

double rounded_sig6(double value) { return std::strtod(format_sig6(value).c_str(), nullptr); }

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out += '"';
  return out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

namespace {

constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                    "#66a61e", "#e6ab02", "#a6761d", "#666666"};
constexpr double kWidth = 720;
constexpr double kPanelHeight = 360;
constexpr double kLeft = 90, kRight = 170, kTop = 40, kBottom = 50;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Range {
  double lo = 0, hi = 1;
};

Range padded(double lo, double hi) {
  if (lo == hi) {
    lo -= 1;
    hi += 1;
  }
  return {lo, hi};
}

void panel(std::ostringstream& svg, const ChartPanel& p, double y0) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  bool first = true;
  for (const auto& l : p.lines) {
    for (std::size_t i = 0; i < l.x.size(); ++i) {
      if (first) {
        xmin = xmax = l.x[i];
        ymin = ymax = l.y[i];
        first = false;
      }
      xmin = std::min(xmin, l.x[i]);
      xmax = std::max(xmax, l.x[i]);
      ymin = std::min(ymin, l.y[i]);
      ymax = std::max(ymax, l.y[i]);
    }
  }
  ymin = std::min(ymin, 0.0);
  const Range xr = padded(xmin, xmax);
  const Range yr = padded(ymin, ymax);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kPanelHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double y) { return y0 + kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  svg << "<g class=\"panel\">\n";
  svg << "<text x=\"" << num(kLeft) << "\" y=\"" << num(y0 + 24) << "\" font-size=\"14\">"
      << xml_escape(p.title) << "</text>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(yr.lo)) << "\" x2=\"" << num(kLeft + plot_w)
      << "\" y2=\"" << num(sy(yr.lo)) << "\" stroke=\"#000\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(yr.lo)) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(sy(yr.hi)) << "\" stroke=\"#000\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double yv = yr.lo + (yr.hi - yr.lo) * t / 4.0;
    const double xv = xr.lo + (xr.hi - xr.lo) * t / 4.0;
    svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(sy(yv) + 4)
        << "\" font-size=\"10\" text-anchor=\"end\">" << format_sig6(yv) << "</text>\n";
    svg << "<text x=\"" << num(sx(xv)) << "\" y=\"" << num(sy(yr.lo) + 16)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << format_sig6(xv) << "</text>\n";
  }
  if (yr.lo < 0 && yr.hi > 0) {
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(sy(0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(y0 + kPanelHeight - 10)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << xml_escape(p.x_label) << "</text>\n";
  svg << "<text x=\"14\" y=\"" << num(y0 + kTop + plot_h / 2) << "\" font-size=\"11\" transform=\"rotate(-90 14 "
      << num(y0 + kTop + plot_h / 2) << ")\" text-anchor=\"middle\">" << xml_escape(p.y_label)
      << "</text>\n";

  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    const auto& l = p.lines[i];
    const char* color = kPalette[i % std::size(kPalette)];
    svg << "<g class=\"series\" data-name=\"" << xml_escape(l.name) << "\">\n";
    if (!l.x.empty()) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (std::size_t k = 0; k < l.x.size(); ++k) {
        if (k) svg << ' ';
        svg << num(sx(l.x[k])) << ',' << num(sy(l.y[k]));
      }
      svg << "\"/>\n";
      for (std::size_t k = 0; k < l.x.size(); ++k) {
        svg << "<circle cx=\"" << num(sx(l.x[k])) << "\" cy=\"" << num(sy(l.y[k]))
            << "\" r=\"3\" fill=\"" << color << "\" data-x=\"" << format_sig6(l.x[k])
            << "\" data-value=\"" << format_sig6(l.y[k]) << "\"/>\n";
      }
    }
    const double ly = y0 + kTop + 14.0 * static_cast<double>(i);
    svg << "<rect x=\"" << num(kWidth - kRight + 12) << "\" y=\"" << num(ly - 8)
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
    svg << "<text x=\"" << num(kWidth - kRight + 26) << "\" y=\"" << num(ly + 1)
        << "\" font-size=\"11\">" << xml_escape(l.name) << "</text>\n";
    svg << "</g>\n";
  }
  svg << "</g>\n";
}

void open_svg(std::ostringstream& svg, double height) {
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
}

}  // namespace

std::string render_line_chart(const std::vector<ChartPanel>& panels) {
  std::ostringstream svg;
  open_svg(svg, kPanelHeight * static_cast<double>(std::max<std::size_t>(1, panels.size())));
  for (std::size_t i = 0; i < panels.size(); ++i) {
    panel(svg, panels[i], kPanelHeight * static_cast<double>(i));
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

void pyramid_block(std::ostringstream& svg, const PyramidTable& t, bool amount, double y0,
                   int sides) {
  const double mid = kWidth / 2;
  const double half = kWidth / 2 - 110;
  const double row_h = 34;
  svg << "<g class=\"view\" data-view=\"" << (amount ? "amount" : "count") << "\">\n";
  svg << "<text x=\"" << num(mid) << "\" y=\"" << num(y0 + 20)
      << "\" font-size=\"14\" text-anchor=\"middle\">"
      << (amount ? "Share of total funding amount" : "Share of funding rounds") << "</text>\n";
  for (int side = 0; side < sides; ++side) {
    const std::string& name = side == 0 ? t.left : t.right;
    const char* color = kPalette[side];
    svg << "<g class=\"series\" data-name=\"" << xml_escape(name) << "\">\n";
    svg << "<text x=\"" << num(side == 0 ? mid - half : mid + half) << "\" y=\"" << num(y0 + 40)
        << "\" font-size=\"12\" text-anchor=\"" << (side == 0 ? "start" : "end") << "\">"
        << xml_escape(name) << "</text>\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      const auto& row = t.rows[r];
      const double share = amount ? (side == 0 ? row.left_amount_share : row.right_amount_share)
                                  : (side == 0 ? row.left_count_share : row.right_count_share);
      const double w = share * half;
      const double y = y0 + 50 + row_h * static_cast<double>(t.rows.size() - 1 - r);
      const double x = side == 0 ? mid - 40 - w : mid + 40;
      svg << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
          << "\" height=\"" << num(row_h - 6) << "\" fill=\"" << color << "\" data-stage=\""
          << to_string(row.stage) << "\" data-value=\"" << format_sig6(share) << "\"/>\n";
      svg << "<text x=\"" << num(side == 0 ? x - 4 : x + w + 4) << "\" y=\"" << num(y + row_h / 2)
          << "\" font-size=\"10\" text-anchor=\"" << (side == 0 ? "end" : "start") << "\">"
          << format_sig6(share) << "</text>\n";
    }
    svg << "</g>\n";
  }
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double y = y0 + 50 + row_h * static_cast<double>(t.rows.size() - 1 - r);
    svg << "<text x=\"" << num(mid) << "\" y=\"" << num(y + row_h / 2)
        << "\" font-size=\"10\" text-anchor=\"middle\">" << to_string(t.rows[r].stage) << "</text>\n";
  }
  svg << "</g>\n";
}

}  // namespace

std::string render_pyramid(const PyramidTable& table) {
  const double block = 50 + 34 * static_cast<double>(table.rows.size()) + 20;
  std::ostringstream svg;
  open_svg(svg, 2 * block);
  pyramid_block(svg, table, true, 0, 2);
  pyramid_block(svg, table, false, block, 2);
  svg << "</svg>\n";
  return svg.str();
}

std::string render_distribution(const StageDistribution& dist) {
  const PyramidTable table = pairwise_pyramid(dist, dist);
  const double block = 50 + 34 * static_cast<double>(table.rows.size()) + 20;
  std::ostringstream svg;
  open_svg(svg, 2 * block);
  pyramid_block(svg, table, true, 0, 1);
  pyramid_block(svg, table, false, block, 1);
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ecoindex
