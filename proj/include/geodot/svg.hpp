#pragma once

#include <string>
#include <vector>

namespace geodot::io {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

enum class PlotKind { Scatter, Line };

/// Renders a standalone SVG plot with axes, tick labels, and a legend.
/// Throws on an empty series list or when every series is empty.
std::string render_plot(const std::vector<PlotSeries>& series, PlotKind kind,
                        const std::string& title, const std::string& x_label,
                        const std::string& y_label);

/// render_plot + write to disk.
void emit_plot(const std::vector<PlotSeries>& series, PlotKind kind, const std::string& path,
               const std::string& title, const std::string& x_label, const std::string& y_label);

}  // namespace geodot::io
