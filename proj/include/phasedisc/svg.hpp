#pragma once

#include <optional>
#include <string>
#include <vector>

namespace phasedisc {

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> yerr;
};

struct PlotSeries {
  std::string name;
  std::vector<PlotPoint> points;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  /// Cap on drawn error bars per series; extra points keep their lines
  /// but drop the bars so dense curves stay readable.
  std::size_t max_error_bars = 25;
};

/// Static line chart with axes, ticks, legend and optional error bars.
/// Throws std::runtime_error when there is nothing to plot.
void write_svg_chart(const std::string& path, const PlotSpec& spec);

}  // namespace phasedisc
