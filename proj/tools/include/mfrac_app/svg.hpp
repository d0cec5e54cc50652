#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mfrac::app {

struct PlotLine {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool steps = false;  // piecewise constant from each x to the next
};

struct PlotPanel {
  std::string title;
  std::vector<PlotLine> lines;
  std::optional<std::pair<double, double>> y_range;
};

/// Panels stacked vertically, each with a frame, min/max axis labels and a legend.
std::string render_svg(const std::vector<PlotPanel>& panels, int width = 800,
                       int panel_height = 260);

}  // namespace mfrac::app
