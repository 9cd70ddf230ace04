#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hypcsp/geometry.hpp"

namespace hypcsp {

// Embedded graph claiming the (r,d) conditions: tiles/cells as vertices
// (ids dense 0..n-1), shared-edge adjacency, positions in the hyperboloid
// model. Whether the claim actually holds is checked by validate_embedding.
struct HypGraph {
    std::vector<HypPoint> positions;       // index = vertex id
    std::vector<std::pair<int, int>> edges;  // first < second, no duplicates
    double r = 0.0;
    double d = 0.0;

    int num_vertices() const { return static_cast<int>(positions.size()); }
    int num_edges() const { return static_cast<int>(edges.size()); }

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("self-loop");
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
    }

    void finalize_edges() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (auto& [u, v] : edges)
            if (u < 0 || v >= num_vertices())
                throw std::invalid_argument("edge endpoint out of range");
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(positions.size());
        for (auto& [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        for (auto& nb : adj) std::sort(nb.begin(), nb.end());
        return adj;
    }

    int degree(int v) const {
        int deg = 0;
        for (auto& [a, b] : edges) deg += (a == v || b == v);
        return deg;
    }
};

struct Violation {
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool pass() const { return violations.empty(); }
};

}  // namespace hypcsp
