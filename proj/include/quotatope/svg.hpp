#pragma once

// Minimal deterministic SVG scatter plots.  The figures behind the datasets
// are plain scatters, so a fixed canvas with auto-scaled axes is enough; all
// numbers are formatted through one snprintf funnel for byte-stable output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace quotatope {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> pts;
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace detail

inline std::string svg_scatter(const std::vector<SvgSeries>& series, const std::string& title,
                               const std::string& x_label, const std::string& y_label) {
    const double W = 900, H = 600, ML = 80, MR = 30, MT = 50, MB = 60;
    static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                     "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    double xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    bool any = false;
    for (const auto& s : series)
        for (const auto& [x, y] : s.pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!any) {
                xlo = xhi = x;
                ylo = yhi = y;
                any = true;
            }
            xlo = std::min(xlo, x);
            xhi = std::max(xhi, x);
            ylo = std::min(ylo, y);
            yhi = std::max(yhi, y);
        }
    if (xhi - xlo < 1e-12) {
        xlo -= 1;
        xhi += 1;
    }
    if (yhi - ylo < 1e-12) {
        ylo -= 1;
        yhi += 1;
    }
    double xpad = 0.03 * (xhi - xlo), ypad = 0.05 * (yhi - ylo);
    xlo -= xpad;
    xhi += xpad;
    ylo -= ypad;
    yhi += ypad;
    auto px = [&](double x) { return ML + (x - xlo) / (xhi - xlo) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ylo) / (yhi - ylo) * (H - MT - MB); };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 900 600\" "
           "font-family=\"sans-serif\" font-size=\"13\">\n";
    out += "<rect width=\"900\" height=\"600\" fill=\"white\"/>\n";
    out += "<text x=\"450\" y=\"28\" text-anchor=\"middle\" font-size=\"17\">" + title +
           "</text>\n";
    // axes
    out += "<line x1=\"" + detail::svg_num(ML) + "\" y1=\"" + detail::svg_num(H - MB) +
           "\" x2=\"" + detail::svg_num(W - MR) + "\" y2=\"" + detail::svg_num(H - MB) +
           "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + detail::svg_num(ML) + "\" y1=\"" + detail::svg_num(MT) + "\" x2=\"" +
           detail::svg_num(ML) + "\" y2=\"" + detail::svg_num(H - MB) + "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double fx = xlo + t * (xhi - xlo) / 4, fy = ylo + t * (yhi - ylo) / 4;
        out += "<text x=\"" + detail::svg_num(px(fx)) + "\" y=\"" + detail::svg_num(H - MB + 18) +
               "\" text-anchor=\"middle\">" + detail::svg_num(fx) + "</text>\n";
        out += "<text x=\"" + detail::svg_num(ML - 8) + "\" y=\"" + detail::svg_num(py(fy) + 4) +
               "\" text-anchor=\"end\">" + detail::svg_num(fy) + "</text>\n";
    }
    out += "<text x=\"" + detail::svg_num((ML + W - MR) / 2) + "\" y=\"" +
           detail::svg_num(H - 14) + "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    out += "<text x=\"22\" y=\"" + detail::svg_num((MT + H - MB) / 2) +
           "\" text-anchor=\"middle\" transform=\"rotate(-90 22 " +
           detail::svg_num((MT + H - MB) / 2) + ")\">" + y_label + "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = kPalette[si % 8];
        for (const auto& [x, y] : series[si].pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            out += "<circle cx=\"" + detail::svg_num(px(x)) + "\" cy=\"" + detail::svg_num(py(y)) +
                   "\" r=\"2.2\" fill=\"" + color + "\" fill-opacity=\"0.7\"/>\n";
        }
        if (!series[si].label.empty()) {
            double ly = MT + 16 + 16 * static_cast<double>(si);
            out += "<circle cx=\"" + detail::svg_num(W - MR - 150) + "\" cy=\"" +
                   detail::svg_num(ly - 4) + "\" r=\"4\" fill=\"" + color + "\"/>\n";
            out += "<text x=\"" + detail::svg_num(W - MR - 140) + "\" y=\"" + detail::svg_num(ly) +
                   "\">" + series[si].label + "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace quotatope
