#pragma once

#include <string>
#include <vector>

#include "maoa/csv.hpp"

namespace maoa {

struct PlotOptions
{
    std::string title;
    std::string x_column;               // empty: first column
    std::vector<std::string> y_columns; // empty: every other numeric column
    bool log_x = false;
    bool log_y = false;
    int width = 720;
    int height = 480;
};

/// Self-contained SVG line chart, one polyline per y column. Throws
/// ValidationError when there is nothing to draw.
std::string plot_svg(const CsvTable& table, const PlotOptions& opts);

}  // namespace maoa
