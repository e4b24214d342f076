#pragma once

#include <string>
#include <vector>

namespace sbcli {

enum class SeriesStyle { Line, Markers, LineAndMarkers };

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    SeriesStyle style = SeriesStyle::Line;
    std::string color;  // empty: taken from the palette
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    int width = 800;
    int height = 500;
    bool zero_line = false;  // horizontal line at y = 0
};

/// Self-contained SVG: frame, ticks, labels, polylines/markers and legend.
std::string render_svg(const Plot& plot);

}  // namespace sbcli
