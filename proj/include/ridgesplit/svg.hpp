#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ridgesplit {

/// One polyline on a chart.
struct SvgSeries {
    std::string label;
    std::string color;  // SVG color, e.g. "red" or "#1f4fbf"
    std::vector<std::pair<double, double>> points;
};

/// Writes a self-contained SVG 1.1 line chart: axes, tick labels, grid,
/// one polyline per series and a legend. No external resources.
void write_line_chart(const std::string& path, const std::string& title,
                      const std::string& x_label, const std::string& y_label,
                      const std::vector<SvgSeries>& series);

}  // namespace ridgesplit
