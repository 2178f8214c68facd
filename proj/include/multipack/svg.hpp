#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "multipack/geometry.hpp"

namespace multipack {

struct SvgOptions {
    double width = 800.0;
    double margin = 40.0;
    double point_radius = 4.0;
    /// Circle around each point through its second nearest neighbor.
    bool second_neighbor_circles = false;
};

namespace detail {

inline std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    if (s == "-0.000") s = "0.000";
    return s;
}

} // namespace detail

/// Deterministic SVG 1.1 drawing of a point set. Witness points are filled
/// red; 1D sets are drawn on a horizontal axis.
inline std::string render_svg(const PointSet& points, std::span<const Index> witness = {}, const SvgOptions& opt = {}) {
    const std::size_t n = points.size();
    std::vector<double> xs(n), ys(n, 0.0);
    for (Index i = 0; i < n; ++i) {
        xs[i] = points[i].x().to_double();
        if (points.dim() == 2) ys[i] = points[i].y().to_double();
    }
    std::vector<double> radii;
    if (opt.second_neighbor_circles && n >= 3) {
        const auto table = nearest_neighbors(points, 2);
        radii.resize(n);
        for (Index i = 0; i < n; ++i) radii[i] = std::sqrt(squared_distance(points[i], points[table.neighbor(i, 2)]).to_double());
    }

    double min_x = 0, max_x = 1, min_y = 0, max_y = 0;
    if (n > 0) {
        min_x = max_x = xs[0];
        min_y = max_y = ys[0];
    }
    for (Index i = 0; i < n; ++i) {
        const double r = radii.empty() ? 0.0 : radii[i];
        min_x = std::min(min_x, xs[i] - r);
        max_x = std::max(max_x, xs[i] + r);
        min_y = std::min(min_y, ys[i] - r);
        max_y = std::max(max_y, ys[i] + r);
    }
    const double span_x = std::max(max_x - min_x, 1e-12);
    const double span_y = std::max(max_y - min_y, 0.0);
    const double inner = opt.width - 2 * opt.margin;
    const double scale = inner / std::max(span_x, span_y);
    const double height = points.dim() == 1 && radii.empty() ? 2 * opt.margin : span_y * scale + 2 * opt.margin;

    auto px = [&](double x) { return opt.margin + (x - min_x) * scale; };
    auto py = [&](double y) { return height - opt.margin - (y - min_y) * scale; };

    std::vector<char> highlighted(n, 0);
    for (Index w : witness)
        if (w < n) highlighted[w] = 1;

    using detail::fmt_num;
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt_num(opt.width) + "\" height=\"" + fmt_num(height) +
           "\" viewBox=\"0 0 " + fmt_num(opt.width) + " " + fmt_num(height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (points.dim() == 1)
        out += "<line class=\"axis\" x1=\"" + fmt_num(opt.margin / 2) + "\" y1=\"" + fmt_num(py(0)) + "\" x2=\"" + fmt_num(opt.width - opt.margin / 2) +
               "\" y2=\"" + fmt_num(py(0)) + "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
    for (Index i = 0; i < radii.size(); ++i)
        out += "<circle class=\"n2\" cx=\"" + fmt_num(px(xs[i])) + "\" cy=\"" + fmt_num(py(ys[i])) + "\" r=\"" + fmt_num(radii[i] * scale) +
               "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"0.8\"/>\n";
    for (Index i = 0; i < n; ++i) {
        out += "<circle class=\"" + std::string(highlighted[i] ? "point witness" : "point") + "\" id=\"p" + std::to_string(i) + "\" cx=\"" +
               fmt_num(px(xs[i])) + "\" cy=\"" + fmt_num(py(ys[i])) + "\" r=\"" + fmt_num(highlighted[i] ? opt.point_radius * 1.5 : opt.point_radius) +
               "\" fill=\"" + (highlighted[i] ? "crimson" : "black") + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace multipack
