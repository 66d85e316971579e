#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hetbo/errors.hpp"

namespace hetbo {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 480;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};
constexpr int kPaletteSize = 7;

std::string fmt(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

std::string escape_text(const std::string& text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Range {
    double low = std::numeric_limits<double>::infinity();
    double high = -std::numeric_limits<double>::infinity();

    void include(double value) {
        if (!std::isfinite(value)) return;
        low = std::min(low, value);
        high = std::max(high, value);
    }

    void finalise() {
        if (!(low <= high)) {
            low = 0.0;
            high = 1.0;
        }
        if (high - low < 1e-12) {
            low -= 1.0;
            high += 1.0;
        }
    }
};

/// Round tick spacing to a 1/2/5 decade multiple covering roughly five steps.
double nice_step(double range) {
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    if (norm < 1.5) return mag;
    if (norm < 3.5) return 2.0 * mag;
    if (norm < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

class Canvas {
public:
    Canvas(Range x_range, Range y_range) : x_(x_range), y_(y_range) {}

    double px(double x) const {
        return kMarginLeft + (x - x_.low) / (x_.high - x_.low) * plot_width();
    }

    double py(double y) const {
        return kMarginTop + (y_.high - y) / (y_.high - y_.low) * plot_height();
    }

    static double plot_width() { return kWidth - kMarginLeft - kMarginRight; }
    static double plot_height() { return kHeight - kMarginTop - kMarginBottom; }

    const Range& x_range() const { return x_; }
    const Range& y_range() const { return y_; }

private:
    Range x_;
    Range y_;
};

void append_axes(std::string& svg, const Canvas& canvas, const std::string& title,
                 const std::string& x_label, const std::string& y_label) {
    const double left = kMarginLeft;
    const double right = kWidth - kMarginRight;
    const double top = kMarginTop;
    const double bottom = kHeight - kMarginBottom;

    svg += "<rect x=\"" + fmt(left) + "\" y=\"" + fmt(top) + "\" width=\"" +
           fmt(right - left) + "\" height=\"" + fmt(bottom - top) +
           "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    const double x_step = nice_step(canvas.x_range().high - canvas.x_range().low);
    const double x_first = std::ceil(canvas.x_range().low / x_step) * x_step;
    for (double t = x_first; t <= canvas.x_range().high + 1e-9 * x_step; t += x_step) {
        const double x = canvas.px(t);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(bottom) + "\" x2=\"" + fmt(x) +
               "\" y2=\"" + fmt(bottom + 5) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(bottom + 20) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + fmt(t) + "</text>\n";
    }
    const double y_step = nice_step(canvas.y_range().high - canvas.y_range().low);
    const double y_first = std::ceil(canvas.y_range().low / y_step) * y_step;
    for (double t = y_first; t <= canvas.y_range().high + 1e-9 * y_step; t += y_step) {
        const double y = canvas.py(t);
        svg += "<line x1=\"" + fmt(left - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(left) +
               "\" y2=\"" + fmt(y) + "\" stroke=\"#333333\"/>\n";
        svg += "<text x=\"" + fmt(left - 9) + "\" y=\"" + fmt(y + 4) +
               "\" font-size=\"12\" text-anchor=\"end\">" + fmt(t) + "</text>\n";
    }

    svg += "<text x=\"" + fmt((left + right) / 2) + "\" y=\"" + fmt(kHeight - 14) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + escape_text(x_label) + "</text>\n";
    svg += "<text x=\"18\" y=\"" + fmt((top + bottom) / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           fmt((top + bottom) / 2) + ")\">" + escape_text(y_label) + "</text>\n";
    svg += "<text x=\"" + fmt((left + right) / 2) + "\" y=\"24\" font-size=\"15\" "
           "text-anchor=\"middle\">" + escape_text(title) + "</text>\n";
}

std::string svg_header() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
           "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) + " " +
           fmt(kHeight) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

/// Simple blue-to-yellow color map for heatmaps.
std::string heat_color(double unit) {
    const double u = std::clamp(unit, 0.0, 1.0);
    const int r = static_cast<int>(std::lround(40 + 215 * u));
    const int g = static_cast<int>(std::lround(40 + 180 * u));
    const int b = static_cast<int>(std::lround(140 - 110 * u));
    char buffer[16];
    std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", r, g, b);
    return buffer;
}

} // namespace

std::string render_line_plot(const LinePlot& plot) {
    if (plot.series.empty()) throw ConfigError("render_line_plot: no series");

    Range x_range;
    Range y_range;
    for (const PlotSeries& s : plot.series) {
        if (s.x.size() != s.y.size())
            throw DimensionMismatchError("render_line_plot: x/y length mismatch");
        if (!s.y_err.empty() && s.y_err.size() != s.y.size())
            throw DimensionMismatchError("render_line_plot: y_err length mismatch");
        if (!s.band_low.empty() &&
            (s.band_low.size() != s.y.size() || s.band_high.size() != s.y.size()))
            throw DimensionMismatchError("render_line_plot: band length mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            x_range.include(s.x[i]);
            y_range.include(s.y[i]);
            if (!s.y_err.empty()) {
                y_range.include(s.y[i] - s.y_err[i]);
                y_range.include(s.y[i] + s.y_err[i]);
            }
            if (!s.band_low.empty()) {
                y_range.include(s.band_low[i]);
                y_range.include(s.band_high[i]);
            }
        }
    }
    x_range.finalise();
    y_range.finalise();
    const Canvas canvas(x_range, y_range);

    std::string svg = svg_header();
    append_axes(svg, canvas, plot.title, plot.x_label, plot.y_label);

    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const PlotSeries& s = plot.series[k];
        const std::string color =
            s.color.empty() ? kPalette[k % kPaletteSize] : s.color;
        if (s.x.empty()) continue;

        if (!s.band_low.empty()) {
            std::string path = "M";
            for (std::size_t i = 0; i < s.x.size(); ++i)
                path += " " + fmt(canvas.px(s.x[i])) + " " + fmt(canvas.py(s.band_low[i]));
            for (std::size_t i = s.x.size(); i-- > 0;)
                path += " " + fmt(canvas.px(s.x[i])) + " " + fmt(canvas.py(s.band_high[i]));
            path += " Z";
            svg += "<path d=\"" + path + "\" fill=\"" + color +
                   "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
        }
        if (!s.points_only) {
            std::string points;
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                points += fmt(canvas.px(s.x[i])) + "," + fmt(canvas.py(s.y[i]));
                if (i + 1 < s.x.size()) points += " ";
            }
            svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color +
                   "\" stroke-width=\"1.8\"/>\n";
        } else {
            for (std::size_t i = 0; i < s.x.size(); ++i)
                svg += "<circle cx=\"" + fmt(canvas.px(s.x[i])) + "\" cy=\"" +
                       fmt(canvas.py(s.y[i])) + "\" r=\"2.6\" fill=\"" + color + "\"/>\n";
        }
        if (!s.y_err.empty()) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (s.y_err[i] <= 0.0) continue;
                const double x = canvas.px(s.x[i]);
                const double y_low = canvas.py(s.y[i] - s.y_err[i]);
                const double y_high = canvas.py(s.y[i] + s.y_err[i]);
                svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y_low) + "\" x2=\"" + fmt(x) +
                       "\" y2=\"" + fmt(y_high) + "\" stroke=\"" + color +
                       "\" stroke-width=\"1\"/>\n";
                svg += "<line x1=\"" + fmt(x - 3) + "\" y1=\"" + fmt(y_low) + "\" x2=\"" +
                       fmt(x + 3) + "\" y2=\"" + fmt(y_low) + "\" stroke=\"" + color +
                       "\" stroke-width=\"1\"/>\n";
                svg += "<line x1=\"" + fmt(x - 3) + "\" y1=\"" + fmt(y_high) + "\" x2=\"" +
                       fmt(x + 3) + "\" y2=\"" + fmt(y_high) + "\" stroke=\"" + color +
                       "\" stroke-width=\"1\"/>\n";
            }
        }
    }

    double legend_y = kMarginTop + 16;
    for (std::size_t k = 0; k < plot.series.size(); ++k) {
        const PlotSeries& s = plot.series[k];
        if (s.label.empty()) continue;
        const std::string color =
            s.color.empty() ? kPalette[k % kPaletteSize] : s.color;
        const double x0 = kWidth - kMarginRight - 160;
        svg += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(legend_y - 4) + "\" x2=\"" +
               fmt(x0 + 22) + "\" y2=\"" + fmt(legend_y - 4) + "\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + fmt(x0 + 28) + "\" y=\"" + fmt(legend_y) +
               "\" font-size=\"12\">" + escape_text(s.label) + "</text>\n";
        legend_y += 16;
    }

    svg += "</svg>\n";
    return svg;
}

std::string render_heatmap(const HeatmapPlot& plot) {
    const Eigen::Index rows = plot.values.rows();
    const Eigen::Index cols = plot.values.cols();
    if (rows < 1 || cols < 1) throw ConfigError("render_heatmap: empty value grid");
    if (!plot.values.allFinite())
        throw NonFiniteObjectiveError("render_heatmap: non-finite cell value");

    Range x_range;
    x_range.include(plot.x_min);
    x_range.include(plot.x_max);
    Range y_range;
    y_range.include(plot.y_min);
    y_range.include(plot.y_max);
    x_range.finalise();
    y_range.finalise();
    const Canvas canvas(x_range, y_range);

    const double low = plot.values.minCoeff();
    const double high = plot.values.maxCoeff();
    const double span = (high - low < 1e-300) ? 1.0 : high - low;

    std::string svg = svg_header();
    const double cell_w = Canvas::plot_width() / static_cast<double>(cols);
    const double cell_h = Canvas::plot_height() / static_cast<double>(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            // Row 0 sits at y_min, so flip vertically for screen coordinates.
            const double x = kMarginLeft + j * cell_w;
            const double y = kMarginTop + (rows - 1 - i) * cell_h;
            svg += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" +
                   fmt(cell_w + 0.5) + "\" height=\"" + fmt(cell_h + 0.5) + "\" fill=\"" +
                   heat_color((plot.values(i, j) - low) / span) + "\"/>\n";
        }
    }
    append_axes(svg, canvas, plot.title, plot.x_label, plot.y_label);
    svg += "<text x=\"" + fmt(kMarginLeft) + "\" y=\"" + fmt(kHeight - 14) +
           "\" font-size=\"11\" fill=\"#555555\">min " + fmt(low) + ", max " + fmt(high) +
           "</text>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace hetbo
