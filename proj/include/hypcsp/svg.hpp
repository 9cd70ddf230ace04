#pragma once

#include <array>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "hypcsp/csp.hpp"
#include "hypcsp/graph.hpp"
#include "hypcsp/minesweeper.hpp"
#include "hypcsp/tessellation.hpp"

// Poincare-disk SVG renderer. Each cell is drawn as its {p,q} polygon;
// geodesic polygon edges are approximated by 8-segment polylines. The
// output is deterministic for fixed inputs.

namespace hypcsp {

struct RenderStyle {
    double disk_radius_px = 360.0;
    double stroke_width = 1.0;
    bool labels = false;

    void check() const {
        if (disk_radius_px <= 0.0) throw std::invalid_argument("disk radius must be positive");
    }
};

namespace detail {

// Fixed fill palette (clue values / color indices); not tied to any
// particular game's scheme.
inline const char* palette(int i) {
    static constexpr std::array<const char*, 10> kColors = {
        "#f4f4f4", "#aec6e8", "#98df8a", "#ffbb78", "#ff9896",
        "#c5b0d5", "#c49c94", "#f7b6d2", "#dbdb8d", "#9edae5"};
    return kColors[((i % 10) + 10) % 10];
}

inline std::string fmt_px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

struct CellPolygon {
    std::vector<PoincarePoint> outline;  // sampled boundary, closed implicitly
    PoincarePoint center;
};

// Polygon corners sit at the tile circumradius, offset half a sector from
// the neighbor directions; the first neighbor (if any) fixes orientation.
inline CellPolygon cell_polygon(const HypGraph& g, const std::vector<std::vector<int>>& adj,
                                int v, int p, int q) {
    double circum = tile_circumradius(p, q);
    TangentBasis basis = tangent_basis(g.positions[v]);
    double theta0 = 0.0;
    if (!adj[v].empty()) theta0 = direction_angle(basis, g.positions[adj[v][0]]);
    std::vector<HypPoint> corners;
    for (int k = 0; k < p; ++k)
        corners.push_back(geodesic_exp(
            basis, theta0 + std::numbers::pi / p + 2.0 * std::numbers::pi * k / p, circum));
    CellPolygon poly;
    poly.center = to_poincare(g.positions[v]);
    constexpr int kArcSegments = 8;
    for (int k = 0; k < p; ++k) {
        const HypPoint& a = corners[k];
        const HypPoint& b = corners[(k + 1) % p];
        for (int s = 0; s < kArcSegments; ++s)
            poly.outline.push_back(to_poincare(geodesic_point(a, b, double(s) / kArcSegments)));
    }
    return poly;
}

inline std::string render(const HypGraph& g, int p, int q, const RenderStyle& style,
                          const std::vector<std::string>& fills,
                          const std::vector<std::string>& labels) {
    style.check();
    double R = style.disk_radius_px;
    double size = 2.0 * R + 2.0 * style.stroke_width + 2.0;
    double cx = size / 2.0, cy = size / 2.0;
    auto px = [&](const PoincarePoint& pt) {
        return fmt_px(cx + pt.u * R) + "," + fmt_px(cy - pt.v * R);
    };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt_px(size) +
           "\" height=\"" + fmt_px(size) + "\" viewBox=\"0 0 " + fmt_px(size) + " " +
           fmt_px(size) + "\">\n";
    out += "<circle cx=\"" + fmt_px(cx) + "\" cy=\"" + fmt_px(cy) + "\" r=\"" + fmt_px(R) +
           "\" fill=\"none\" stroke=\"#202020\" stroke-width=\"" +
           fmt_px(style.stroke_width) + "\"/>\n";

    auto adj = g.adjacency();
    for (int v = 0; v < g.num_vertices(); ++v) {
        CellPolygon poly = cell_polygon(g, adj, v, p, q);
        out += "<path d=\"M" + px(poly.outline[0]);
        for (size_t i = 1; i < poly.outline.size(); ++i) out += " L" + px(poly.outline[i]);
        out += " Z\" fill=\"" + fills[v] + "\" stroke=\"#404040\" stroke-width=\"" +
               fmt_px(style.stroke_width) + "\"/>\n";
        if (style.labels && !labels[v].empty()) {
            // boundary cells are tiny; scale the font with the cell center
            double t = 1.0 - (poly.center.u * poly.center.u + poly.center.v * poly.center.v);
            out += "<text x=\"" + fmt_px(cx + poly.center.u * R) + "\" y=\"" +
                   fmt_px(cy - poly.center.v * R) + "\" font-size=\"" +
                   fmt_px(std::max(4.0, 14.0 * t)) +
                   "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + labels[v] +
                   "</text>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace detail

inline std::string render_svg(const HypGraph& g, int p, int q,
                              const RenderStyle& style = {}) {
    std::vector<std::string> fills(g.num_vertices(), "#ffffff");
    std::vector<std::string> labels(g.num_vertices());
    return detail::render(g, p, q, style, fills, labels);
}

// Fill by solution color index.
inline std::string render_svg(const HypGraph& g, int p, int q, const Coloring& coloring,
                              const RenderStyle& style = {}) {
    if (coloring.assignment.size() != static_cast<size_t>(g.num_vertices()))
        throw std::invalid_argument("render_svg: coloring does not match graph");
    std::vector<std::string> fills, labels(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
        fills.push_back(detail::palette(coloring.assignment[v] + 1));
        labels[v] = std::to_string(coloring.assignment[v]);
    }
    return detail::render(g, p, q, style, fills, labels);
}

// Fill by clue value; flagged cells get dedicated colors.
inline std::string render_svg(const HypGraph& g, int p, int q, const Board& board,
                              const RenderStyle& style = {}) {
    if (board.graph.num_vertices() != g.num_vertices())
        throw std::invalid_argument("render_svg: board does not match graph");
    std::vector<std::string> fills(g.num_vertices(), "#ffffff");
    std::vector<std::string> labels(g.num_vertices());
    for (auto& [cell, n] : board.clues) {
        fills[cell] = detail::palette(n);
        labels[cell] = std::to_string(n);
    }
    for (auto& [cell, f] : board.flags) {
        fills[cell] = (f == Flag::kKnownMine) ? "#d62728" : "#e8e8e8";
        labels[cell] = (f == Flag::kKnownMine) ? "*" : "";
    }
    return detail::render(g, p, q, style, fills, labels);
}

}  // namespace hypcsp
