#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sykh {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool dashed = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::optional<double> reference_y;  // horizontal dashed line
    std::string reference_label;
};

inline constexpr int kPlotWidth = 800;
inline constexpr int kPlotHeight = 500;

/// Standalone SVG 1.1 line plot with axes, ticks and a legend. Non-finite
/// points break the polyline. Output depends only on the spec.
std::string render_svg(const PlotSpec& spec);

/// "Nice" tick positions (steps of 1, 2 or 5 times a power of ten) covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace sykh
