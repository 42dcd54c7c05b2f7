#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace nsconv {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dots = false;  // markers instead of a line
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

/// Minimal static SVG line chart; enough to eyeball sweep output.
void write_svg_chart(const std::filesystem::path& file, const PlotSpec& spec);

}  // namespace nsconv
