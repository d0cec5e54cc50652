#include "mfrac_app/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mfrac::app {

namespace {

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<PlotPanel>& panels, int width, int panel_height) {
  const double left = 70, right = 20, top = 30, bottom = 30;
  const int height = panel_height * static_cast<int>(std::max<std::size_t>(panels.size(), 1));
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    std::to_string(width) + "\" height=\"" + std::to_string(height) +
                    "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const auto& panel = panels[p];
    const double y0 = static_cast<double>(p) * panel_height;
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& line : panel.lines) {
      for (double v : line.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
      for (double v : line.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (panel.y_range) std::tie(ymin, ymax) = *panel.y_range;
    if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
    if (!std::isfinite(ymin)) ymin = 0, ymax = 1;
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymin -= 0.5, ymax += 0.5;

    const double pw = width - left - right;
    const double ph = panel_height - top - bottom;
    const auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
    const auto sy = [&](double y) { return y0 + top + (ymax - y) / (ymax - ymin) * ph; };

    out += "<text x=\"" + num(left) + "\" y=\"" + num(y0 + 18) + "\" font-size=\"13\">" +
           escape(panel.title) + "</text>\n";
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(y0 + top) + "\" width=\"" + num(pw) +
           "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y0 + top + 4) +
           "\" text-anchor=\"end\">" + label(ymax) + "</text>\n";
    out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y0 + top + ph) +
           "\" text-anchor=\"end\">" + label(ymin) + "</text>\n";
    out += "<text x=\"" + num(left) + "\" y=\"" + num(y0 + top + ph + 16) +
           "\" text-anchor=\"middle\">" + label(xmin) + "</text>\n";
    out += "<text x=\"" + num(left + pw) + "\" y=\"" + num(y0 + top + ph + 16) +
           "\" text-anchor=\"middle\">" + label(xmax) + "</text>\n";

    for (std::size_t l = 0; l < panel.lines.size(); ++l) {
      const auto& line = panel.lines[l];
      const char* color = kColors[l % std::size(kColors)];
      std::string points;
      const std::size_t n = std::min(line.x.size(), line.y.size());
      for (std::size_t i = 0; i < n; ++i) {
        const double y = std::clamp(line.y[i], ymin, ymax);
        points += num(sx(line.x[i])) + "," + num(sy(y)) + " ";
        if (line.steps) {
          const double x_next = i + 1 < n ? line.x[i + 1] : xmax;
          points += num(sx(x_next)) + "," + num(sy(y)) + " ";
        }
      }
      if (!points.empty()) points.pop_back();
      out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.2\" points=\"" + points + "\"/>\n";
      const double ly = y0 + top + 14 + 14 * static_cast<double>(l);
      out += "<text x=\"" + num(left + pw - 8) + "\" y=\"" + num(ly) +
             "\" text-anchor=\"end\" fill=\"" + color + "\">" + escape(line.name) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace mfrac::app
