#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace hetbo {

/// One curve in a line plot. Optional per-point error bars and a shaded
/// band (both in data units). Colors cycle through a fixed palette when
/// left empty, keeping output deterministic.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> y_err;
    std::vector<double> band_low;
    std::vector<double> band_high;
    bool points_only = false;
    std::string color;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
};

/// Dense 2D field rendered as colored cells. values(i, j) maps to
/// x = x_min + j/(cols-1)·(x_max-x_min), y = y_min + i/(rows-1)·(y_max-y_min).
struct HeatmapPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    Eigen::MatrixXd values;
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
};

/// Render self-contained SVG markup. Output is a pure function of the
/// inputs: no timestamps, no randomness.
std::string render_line_plot(const LinePlot& plot);
std::string render_heatmap(const HeatmapPlot& plot);

} // namespace hetbo
