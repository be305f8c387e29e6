#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hopfcole {

/// Minimal static vector-graphics line plot (one SVG file per figure).
struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool markers = false;
};

struct SvgPlotSpec {
  std::string title;
  std::string x_label, y_label;
  bool log_x = false, log_y = false;
  int width = 640, height = 420;
};

void write_svg_plot(const std::filesystem::path& path, const SvgPlotSpec& spec,
                    const std::vector<SvgSeries>& series);

}  // namespace hopfcole
