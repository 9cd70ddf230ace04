#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <numbers>
#include <set>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "hypcsp/geometry.hpp"
#include "hypcsp/graph.hpp"

// Bounded regular {p,q} tessellation graphs (one vertex per tile, edges
// between edge-sharing tiles) plus the strict embedding validator.

namespace hypcsp {

inline constexpr int kRingCap = 8;

inline bool is_hyperbolic(int p, int q) {
    return p >= 3 && q >= 3 && (p - 2) * (q - 2) > 4;
}

struct TilingSpec {
    int p = 7;
    int q = 3;
    int rings = 0;
    std::vector<int> removed;
};

struct NaturalParams {
    double r;         // minimum pairwise separation claimed
    double d;         // maximum edge length claimed
    double edge_len;  // side length of the {p,q} tile
    double spacing;   // distance between adjacent tile centers
};

// Closed-form {p,q} tile metrics; r and d bracket the center spacing with
// fixed 0.9 / 1.1 margins.
inline NaturalParams natural_params(int p, int q) {
    if (!is_hyperbolic(p, q))
        throw std::invalid_argument("(p,q) is not a hyperbolic tiling");
    const double pi = std::numbers::pi;
    double edge = 2.0 * std::acosh(std::cos(pi / p) / std::sin(pi / q));
    double spacing = 2.0 * std::acosh(std::cos(pi / q) / std::sin(pi / p));
    return {0.9 * spacing, 1.1 * spacing, edge, spacing};
}

// Circumradius of the {p,q} tile: cosh R = cot(pi/p) cot(pi/q).
inline double tile_circumradius(int p, int q) {
    const double pi = std::numbers::pi;
    return std::acosh(1.0 / (std::tan(pi / p) * std::tan(pi / q)));
}

namespace detail {

// Dedup key: Poincare coordinates are bounded, so a fixed 1e-6 grid with a
// 3x3 bucket search separates distinct tile centers from numeric drift.
struct CenterIndex {
    std::unordered_map<uint64_t, std::vector<int>> buckets;
    std::vector<PoincarePoint> pts;

    static uint64_t key(long long i, long long j) {
        return (static_cast<uint64_t>(i + (1LL << 30)) << 32) |
               static_cast<uint64_t>(j + (1LL << 30));
    }

    int find(const PoincarePoint& p) const {
        long long bi = std::llround(p.u * 1e6), bj = std::llround(p.v * 1e6);
        for (long long di = -1; di <= 1; ++di)
            for (long long dj = -1; dj <= 1; ++dj) {
                auto it = buckets.find(key(bi + di, bj + dj));
                if (it == buckets.end()) continue;
                for (int id : it->second) {
                    double du = pts[id].u - p.u, dv = pts[id].v - p.v;
                    if (du * du + dv * dv < 1e-12) return id;
                }
            }
        return -1;
    }

    void insert(const PoincarePoint& p, int id) {
        pts.push_back(p);
        buckets[key(std::llround(p.u * 1e6), std::llround(p.v * 1e6))].push_back(id);
    }
};

}  // namespace detail

// BFS over tile frames. The step to neighbor k of a tile is the rotation
// by pi about the midpoint of shared edge k, a genuine symmetry of the
// tiling, so centers of revisited tiles coincide and dedup is safe.
inline HypGraph generate_tiling(const TilingSpec& spec) {
    if (!is_hyperbolic(spec.p, spec.q))
        throw std::invalid_argument("(p,q) is not a hyperbolic tiling");
    if (spec.rings < 0 || spec.rings > kRingCap)
        throw std::invalid_argument("rings out of range (0..8)");

    NaturalParams np = natural_params(spec.p, spec.q);
    double rho = np.spacing / 2.0;

    std::vector<Isometry> steps;
    for (int k = 0; k < spec.p; ++k)
        steps.push_back(Isometry::rotation(2.0 * std::numbers::pi * k / spec.p) *
                        Isometry::translation_x(rho) * Isometry::rotation(std::numbers::pi) *
                        Isometry::translation_x(-rho));

    std::vector<Isometry> frames{Isometry::identity()};
    std::vector<int> ring{0};
    detail::CenterIndex index;
    index.insert(to_poincare(HypPoint::origin()), 0);

    std::deque<int> queue{0};
    while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        if (ring[t] >= spec.rings) continue;
        for (const auto& step : steps) {
            Isometry f = frames[t] * step;
            HypPoint c = apply(f, HypPoint::origin());
            if (index.find(to_poincare(c)) >= 0) continue;
            int id = static_cast<int>(frames.size());
            frames.push_back(f);
            ring.push_back(ring[t] + 1);
            index.insert(to_poincare(c), id);
            queue.push_back(id);
        }
    }

    // second pass: record every shared-edge adjacency inside the kept set
    HypGraph g;
    g.r = np.r;
    g.d = np.d;
    for (const auto& f : frames) g.positions.push_back(apply(f, HypPoint::origin()));
    for (int t = 0; t < static_cast<int>(frames.size()); ++t)
        for (const auto& step : steps) {
            HypPoint c = apply(frames[t] * step, HypPoint::origin());
            int u = index.find(to_poincare(c));
            if (u >= 0 && u != t) g.add_edge(t, u);
        }
    g.finalize_edges();

    if (!spec.removed.empty()) {
        std::set<int> drop(spec.removed.begin(), spec.removed.end());
        for (int id : drop)
            if (id < 0 || id >= g.num_vertices())
                throw std::invalid_argument("removed tile id out of range");
        HypGraph h;
        h.r = g.r;
        h.d = g.d;
        std::vector<int> remap(g.num_vertices(), -1);
        for (int v = 0; v < g.num_vertices(); ++v)
            if (!drop.count(v)) {
                remap[v] = h.num_vertices();
                h.positions.push_back(g.positions[v]);
            }
        for (auto& [u, v] : g.edges)
            if (remap[u] >= 0 && remap[v] >= 0) h.add_edge(remap[u], remap[v]);
        h.finalize_edges();
        return h;
    }
    return g;
}

// Packing degree bound: |N(v)| <= area(d + r/2) / area(r/2).
inline int degree_bound(double r, double d) {
    if (r <= 0.0 || d <= 0.0) throw std::invalid_argument("degree_bound: r,d must be positive");
    return static_cast<int>(std::floor(disk_area(d + r / 2.0) / disk_area(r / 2.0)));
}

// Checks the three (r,d) conditions by brute force: pairwise separation,
// edge lengths, and the drawing conditions (no crossings among edges not
// sharing an endpoint, edges at distance >= r/2 from other vertices).
inline ValidationReport validate_embedding(const HypGraph& g) {
    ValidationReport report;
    auto add = [&](const std::string& msg) { report.violations.push_back({msg}); };
    int n = g.num_vertices();

    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            double dd = dist(g.positions[u], g.positions[v]);
            if (dd <= g.r) {
                std::ostringstream os;
                os << "condition 1: vertices " << u << "," << v << " at distance " << dd
                   << " <= r=" << g.r;
                add(os.str());
            }
        }

    for (auto& [u, v] : g.edges) {
        double dd = dist(g.positions[u], g.positions[v]);
        if (dd >= g.d) {
            std::ostringstream os;
            os << "condition 2: edge {" << u << "," << v << "} has length " << dd
               << " >= d=" << g.d;
            add(os.str());
        }
    }

    int m = g.num_edges();
    for (int i = 0; i < m; ++i) {
        auto [a, b] = g.edges[i];
        Segment si(g.positions[a], g.positions[b]);
        for (int j = i + 1; j < m; ++j) {
            auto [c, dv] = g.edges[j];
            if (a == c || a == dv || b == c || b == dv) continue;  // shared endpoint exempt
            Segment sj(g.positions[c], g.positions[dv]);
            if (segments_cross(si, sj)) {
                std::ostringstream os;
                os << "condition 3: edges {" << a << "," << b << "} and {" << c << "," << dv
                   << "} cross";
                add(os.str());
            }
        }
        for (int w = 0; w < n; ++w) {
            if (w == a || w == b) continue;
            double dd = point_segment_distance(g.positions[w], si);
            if (dd < g.r / 2.0) {
                std::ostringstream os;
                os << "condition 3: edge {" << a << "," << b << "} passes at distance " << dd
                   << " < r/2 from vertex " << w;
                add(os.str());
            }
        }
    }
    return report;
}

}  // namespace hypcsp
