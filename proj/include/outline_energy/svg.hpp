#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "outline_energy/analysis.hpp"
#include "outline_energy/surrogate.hpp"

namespace outline_energy::svg {

namespace detail {

    inline std::string num(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return buf;
    }

    // Maps data coordinates into a plot box with the y axis flipped.
    struct Frame {
        double x0, x1, y0, y1;       // data range
        double px, py, pw, ph;       // pixel box

        double x(double v) const { return px + (v - x0) / (x1 - x0) * pw; }
        double y(double v) const { return py + ph - (v - y0) / (y1 - y0) * ph; }
    };

    inline void open_svg(std::string& out, int width, int height)
    {
        out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
               "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
               std::to_string(width) + " " + std::to_string(height) + "\">\n";
    }

    inline void axes(std::string& out, const Frame& f)
    {
        out += "<line x1=\"" + num(f.px) + "\" y1=\"" + num(f.py + f.ph) + "\" x2=\"" +
               num(f.px + f.pw) + "\" y2=\"" + num(f.py + f.ph) +
               "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out += "<line x1=\"" + num(f.px) + "\" y1=\"" + num(f.py) + "\" x2=\"" + num(f.px) +
               "\" y2=\"" + num(f.py + f.ph) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }

    inline void text(std::string& out, double x, double y, const std::string& label,
                     const char* anchor = "middle")
    {
        out += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"12\" text-anchor=\"" +
               std::string(anchor) + "\">" + label + "</text>\n";
    }

    inline constexpr const char* kShapeColor[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

} // namespace detail

/// Scree plot: one bar per principal component plus the cumulative curve.
inline std::string scree_plot(const analysis::PcaResult& pca)
{
    std::string out;
    detail::open_svg(out, 640, 400);
    const detail::Frame f{0.0, 8.0, 0.0, 1.0, 60, 30, 540, 320};
    detail::axes(out, f);
    for (std::size_t j = 0; j < 8; ++j) {
        const double x = f.x(static_cast<double>(j) + 0.15);
        const double barw = f.pw / 8.0 * 0.7;
        const double top = f.y(pca.explained_ratio[j]);
        out += "<rect x=\"" + detail::num(x) + "\" y=\"" + detail::num(top) + "\" width=\"" +
               detail::num(barw) + "\" height=\"" + detail::num(f.y(0.0) - top) +
               "\" fill=\"#1f77b4\"/>\n";
        detail::text(out, x + barw / 2.0, f.py + f.ph + 16, "PC" + std::to_string(j + 1));
    }
    out += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\" points=\"";
    for (std::size_t j = 0; j < 8; ++j) {
        out += detail::num(f.x(static_cast<double>(j) + 0.5)) + "," +
               detail::num(f.y(pca.cumulative_ratio[j]));
        if (j + 1 < 8)
            out += " ";
    }
    out += "\"/>\n";
    detail::text(out, 320, 395, "explained variance ratio per principal component");
    out += "</svg>\n";
    return out;
}

/// Per-shape kernel density curves of the load distribution.
inline std::string density_plot(const analysis::LoadDistribution& dist)
{
    double peak = 0.0;
    for (const auto& [shape, kde] : dist.density)
        for (const double v : kde)
            peak = std::max(peak, v);
    if (peak <= 0.0)
        peak = 1.0;

    std::string out;
    detail::open_svg(out, 640, 400);
    const detail::Frame f{dist.grid.front(), dist.grid.back(), 0.0, 1.07 * peak, 60, 30, 540, 320};
    detail::axes(out, f);
    int color = 0;
    for (const auto& [shape, kde] : dist.density) {
        out += "<polyline fill=\"none\" stroke=\"" + std::string(detail::kShapeColor[color % 4]) +
               "\" stroke-width=\"2\" points=\"";
        for (std::size_t g = 0; g < dist.grid.size(); ++g) {
            out += detail::num(f.x(dist.grid[g])) + "," + detail::num(f.y(kde[g]));
            if (g + 1 < dist.grid.size())
                out += " ";
        }
        out += "\"/>\n";
        detail::text(out, f.px + f.pw - 40, f.py + 16.0 * (color + 1),
                     std::string(geometry::to_token(shape)), "end");
        ++color;
    }
    detail::text(out, 320, 395, "thermal load density by shape, kWh/m2 yr");
    out += "</svg>\n";
    return out;
}

/// Predicted-vs-simulated scatter with the identity line; one circle per
/// test-set row.
inline std::string scatter_plot(const surrogate::FitReport& report)
{
    double lo = report.pairs.empty() ? 0.0 : report.pairs.front().first;
    double hi = lo;
    for (const auto& [sim, pred] : report.pairs) {
        lo = std::min({lo, sim, pred});
        hi = std::max({hi, sim, pred});
    }
    if (hi == lo)
        hi = lo + 1.0;
    const double pad = 0.04 * (hi - lo);

    std::string out;
    detail::open_svg(out, 480, 480);
    const detail::Frame f{lo - pad, hi + pad, lo - pad, hi + pad, 60, 30, 390, 390};
    detail::axes(out, f);
    out += "<line x1=\"" + detail::num(f.x(lo)) + "\" y1=\"" + detail::num(f.y(lo)) +
           "\" x2=\"" + detail::num(f.x(hi)) + "\" y2=\"" + detail::num(f.y(hi)) +
           "\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& [sim, pred] : report.pairs)
        out += "<circle cx=\"" + detail::num(f.x(sim)) + "\" cy=\"" + detail::num(f.y(pred)) +
               "\" r=\"2\" fill=\"#1f77b4\" fill-opacity=\"0.45\"/>\n";
    detail::text(out, 240, 475,
                 report.condition + " degree " + std::to_string(report.degree) +
                     ", simulated vs predicted");
    out += "</svg>\n";
    return out;
}

} // namespace outline_energy::svg
