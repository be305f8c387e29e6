#include "hopfcole/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hopfcole/common.hpp"
#include "hopfcole/csv.hpp"

namespace hopfcole {

namespace {

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double pix_lo, double pix_hi) const {
    double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo))
                   : (v - lo) / (hi - lo);
    return pix_lo + t * (pix_hi - pix_lo);
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      int e0 = static_cast<int>(std::floor(std::log10(lo)));
      int e1 = static_cast<int>(std::ceil(std::log10(hi)));
      for (int e = e0; e <= e1; ++e) {
        double v = std::pow(10.0, e);
        if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
      }
    } else {
      double span = hi - lo;
      double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
      if (span / step > 8.0) step *= 2.0;
      double v = std::ceil(lo / step) * step;
      for (; v <= hi + 1e-12 * span; v += step) out.push_back(v);
    }
    return out;
  }
};

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

void write_svg_plot(const std::filesystem::path& path, const SvgPlotSpec& spec,
                    const std::vector<SvgSeries>& series) {
  double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_x && s.x[i] <= 0.0) continue;
      if (spec.log_y && s.y[i] <= 0.0) continue;
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  if (xlo > xhi || ylo > yhi) throw NumericalError("svg plot with no plottable points");
  if (xlo == xhi) { xlo -= 0.5; xhi += 0.5; }
  if (ylo == yhi) { ylo = ylo - 0.5 * std::fabs(ylo) - 0.5; yhi = yhi + 0.5 * std::fabs(yhi) + 0.5; }
  if (!spec.log_x) { double pad = 0.05 * (xhi - xlo); xlo -= pad; xhi += pad; }
  if (!spec.log_y) { double pad = 0.05 * (yhi - ylo); ylo -= pad; yhi += pad; }
  Axis ax{xlo, xhi, spec.log_x}, ay{ylo, yhi, spec.log_y};

  const double ml = 64, mr = 16, mt = 32, mb = 44;
  const double px0 = ml, px1 = spec.width - mr;
  const double py0 = spec.height - mb, py1 = mt;  // y grows upward

  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path.string());

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << spec.width / 2 << "\" y=\"18\" text-anchor=\"middle\">"
      << spec.title << "</text>\n";

  for (double t : ax.ticks()) {
    double px = ax.map(t, px0, px1);
    out << "<line x1=\"" << px << "\" y1=\"" << py0 << "\" x2=\"" << px << "\" y2=\""
        << py1 << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << py0 + 16
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    double py = ay.map(t, py0, py1);
    out << "<line x1=\"" << px0 << "\" y1=\"" << py << "\" x2=\"" << px1 << "\" y2=\""
        << py << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << px0 - 6 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  out << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
      << "\" height=\"" << py0 - py1 << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << spec.height - 8
      << "\" text-anchor=\"middle\">" << spec.x_label << "</text>\n";
  out << "<text x=\"14\" y=\"" << (py0 + py1) / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << (py0 + py1) / 2
      << ")\">" << spec.y_label << "</text>\n";

  double legend_y = py1 + 14;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (spec.log_x && s.x[i] <= 0.0) continue;
      if (spec.log_y && s.y[i] <= 0.0) continue;
      out << ax.map(s.x[i], px0, px1) << "," << ay.map(s.y[i], py0, py1) << " ";
    }
    out << "\"/>\n";
    if (s.markers) {
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (spec.log_x && s.x[i] <= 0.0) continue;
        if (spec.log_y && s.y[i] <= 0.0) continue;
        out << "<circle cx=\"" << ax.map(s.x[i], px0, px1) << "\" cy=\""
            << ay.map(s.y[i], py0, py1) << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
      }
    }
    if (!s.label.empty()) {
      out << "<line x1=\"" << px1 - 120 << "\" y1=\"" << legend_y << "\" x2=\""
          << px1 - 100 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
          << "\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << px1 - 94 << "\" y=\"" << legend_y + 4 << "\">" << s.label
          << "</text>\n";
      legend_y += 16;
    }
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace hopfcole
