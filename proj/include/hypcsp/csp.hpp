#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "hypcsp/graph.hpp"

// HLCSP (per-vertex neighborhood constraints) and HECSP (per-edge pair
// constraints), plus the reduction from the former to the latter with a
// decode map back.

namespace hypcsp {

struct ColorSet {
    std::vector<std::string> names;

    int size() const { return static_cast<int>(names.size()); }

    void check() const {
        if (names.empty()) throw std::invalid_argument("empty color set");
        std::unordered_set<std::string> seen(names.begin(), names.end());
        if (seen.size() != names.size()) throw std::invalid_argument("duplicate color names");
    }
};

// Total assignment vertex id -> color index.
struct Coloring {
    std::vector<uint16_t> assignment;
};

// Closed neighborhood of v: v first, then neighbors ascending by id.
inline std::vector<int> neighborhood(const HypGraph& g, int v) {
    if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("neighborhood: unknown vertex");
    std::vector<int> nb{v};
    for (auto& [a, b] : g.edges) {
        if (a == v) nb.push_back(b);
        else if (b == v) nb.push_back(a);
    }
    std::sort(nb.begin() + 1, nb.end());
    return nb;
}

struct VertexConstraint {
    int v = -1;
    std::vector<int> neighbors;                   // v first, then ascending ids
    std::vector<std::vector<uint8_t>> allowed;    // tuples over neighbors, distinct

    void check(int num_colors) const {
        for (const auto& t : allowed) {
            if (t.size() != neighbors.size())
                throw std::invalid_argument("tuple arity mismatch");
            for (uint8_t c : t)
                if (c >= num_colors) throw std::invalid_argument("color index out of range");
        }
    }
};

struct HLCSPInstance {
    HypGraph graph;
    ColorSet colors;
    std::vector<VertexConstraint> constraints;  // indexed by vertex id

    void check() const {
        colors.check();
        if (static_cast<int>(constraints.size()) != graph.num_vertices())
            throw std::invalid_argument("one constraint per vertex required");
        for (int v = 0; v < graph.num_vertices(); ++v) {
            if (constraints[v].v != v) throw std::invalid_argument("constraint id mismatch");
            if (constraints[v].neighbors != neighborhood(graph, v))
                throw std::invalid_argument("constraint neighborhood mismatch");
            constraints[v].check(colors.size());
        }
    }
};

struct HECSPInstance {
    HypGraph graph;
    int num_colors = 0;
    std::vector<int> admissible;  // per vertex: indices < admissible[v] allowed
    // per edge (same order as graph.edges): num_colors x num_colors booleans,
    // row = lower-id endpoint
    std::vector<std::vector<uint8_t>> edge_allowed;

    bool pair_allowed(int edge_idx, int lower_color, int higher_color) const {
        return edge_allowed[edge_idx][lower_color * num_colors + higher_color] != 0;
    }
};

// One enumerated tuple list per vertex; HECSP color j at v decodes to
// tuple j of m(v), and v's own value is the tuple entry for v itself.
struct DecodeMap {
    std::vector<VertexConstraint> per_vertex;
};

inline bool check_hlcsp(const HLCSPInstance& inst, const Coloring& c) {
    if (c.assignment.size() != static_cast<size_t>(inst.graph.num_vertices())) return false;
    for (const auto& vc : inst.constraints) {
        std::vector<uint8_t> restriction;
        restriction.reserve(vc.neighbors.size());
        for (int u : vc.neighbors) restriction.push_back(static_cast<uint8_t>(c.assignment[u]));
        if (std::find(vc.allowed.begin(), vc.allowed.end(), restriction) == vc.allowed.end())
            return false;
    }
    return true;
}

inline bool check_hecsp(const HECSPInstance& inst, const Coloring& c) {
    if (c.assignment.size() != static_cast<size_t>(inst.graph.num_vertices())) return false;
    for (int v = 0; v < inst.graph.num_vertices(); ++v)
        if (c.assignment[v] >= inst.admissible[v]) return false;
    for (size_t e = 0; e < inst.graph.edges.size(); ++e) {
        auto [u, v] = inst.graph.edges[e];
        if (!inst.pair_allowed(static_cast<int>(e), c.assignment[u], c.assignment[v]))
            return false;
    }
    return true;
}

// The enumeration reduction: K' indexes the tuples of m(v); an edge allows
// (j1, j2) iff the two tuples agree on the shared closed neighborhood.
// Vertices with fewer tuples than K' has colors are cut down by the
// per-vertex admissible counts (and through them by every edge matrix).
namespace detail {

// If m(v) is a product set S x K^{deg(v)} (own entry in S, neighbors free),
// an equivalent constraint has scope {v} and tuples S. The agreement edges
// to the neighbors' own constraints carry all the information the dropped
// positions held, so the solution bijection survives. Without this, a
// clue-free vertex of degree d would contribute |K|^(d+1) colors to the
// reduced instance.
inline VertexConstraint simplify_product_constraint(const VertexConstraint& vc, int num_colors) {
    if (vc.neighbors.size() <= 1 || vc.allowed.empty()) return vc;
    unsigned long long tail = 1;
    for (size_t i = 1; i < vc.neighbors.size(); ++i) {
        tail *= static_cast<unsigned long long>(num_colors);
        if (tail > vc.allowed.size()) return vc;
    }
    std::vector<std::vector<uint8_t>> sorted = vc.allowed;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return vc;
    std::vector<uint8_t> own;
    for (const auto& t : sorted)
        if (own.empty() || own.back() != t[0]) own.push_back(t[0]);
    if (own.size() * tail != sorted.size()) return vc;
    // sorted order groups by own entry; each group must be the full tail box
    for (size_t g = 0; g < own.size(); ++g)
        for (unsigned long long i = 0; i < tail; ++i) {
            const auto& t = sorted[g * tail + i];
            if (t[0] != own[g]) return vc;
            unsigned long long code = 0;
            for (size_t p = 1; p < t.size(); ++p)
                code = code * num_colors + t[p];
            if (code != i) return vc;
        }
    VertexConstraint slim;
    slim.v = vc.v;
    slim.neighbors = {vc.v};
    for (uint8_t c : own) slim.allowed.push_back({c});
    return slim;
}

}  // namespace detail

inline std::pair<HECSPInstance, DecodeMap> reduce_to_hecsp(const HLCSPInstance& inst) {
    inst.check();
    HECSPInstance out;
    out.graph = inst.graph;

    std::vector<VertexConstraint> cons;
    cons.reserve(inst.constraints.size());
    for (const auto& vc : inst.constraints)
        cons.push_back(detail::simplify_product_constraint(vc, inst.colors.size()));

    int k = 1;
    for (const auto& vc : cons)
        k = std::max(k, static_cast<int>(vc.allowed.size()));
    out.num_colors = k;
    out.admissible.resize(inst.graph.num_vertices());
    for (int v = 0; v < inst.graph.num_vertices(); ++v)
        out.admissible[v] = static_cast<int>(cons[v].allowed.size());

    // position of vertex u inside vc.neighbors, or -1
    auto pos_of = [](const VertexConstraint& vc, int u) {
        for (size_t i = 0; i < vc.neighbors.size(); ++i)
            if (vc.neighbors[i] == u) return static_cast<int>(i);
        return -1;
    };

    out.edge_allowed.reserve(inst.graph.edges.size());
    for (auto& [u, v] : inst.graph.edges) {
        const auto& cu = cons[u];
        const auto& cv = cons[v];
        std::vector<std::pair<int, int>> shared;  // positions in cu / cv of N(u) ∩ N(v)
        for (int w : cu.neighbors) {
            int pv = pos_of(cv, w);
            if (pv >= 0) shared.emplace_back(pos_of(cu, w), pv);
        }
        std::vector<uint8_t> mat(static_cast<size_t>(k) * k, 0);
        for (size_t j1 = 0; j1 < cu.allowed.size(); ++j1)
            for (size_t j2 = 0; j2 < cv.allowed.size(); ++j2) {
                bool ok = true;
                for (auto& [p1, p2] : shared)
                    if (cu.allowed[j1][p1] != cv.allowed[j2][p2]) { ok = false; break; }
                if (ok) mat[j1 * k + j2] = 1;
            }
        out.edge_allowed.push_back(std::move(mat));
    }

    DecodeMap dm;
    dm.per_vertex = std::move(cons);
    return {std::move(out), std::move(dm)};
}

// Maps an HECSP solution back to an HLCSP coloring. Throws if sol is not
// actually a solution of the reduced instance.
inline Coloring decode(const HECSPInstance& reduced, const Coloring& sol, const DecodeMap& dm) {
    if (!check_hecsp(reduced, sol))
        throw std::invalid_argument("decode: input does not satisfy the reduced instance");
    Coloring c;
    c.assignment.resize(dm.per_vertex.size());
    for (size_t v = 0; v < dm.per_vertex.size(); ++v) {
        const auto& tuple = dm.per_vertex[v].allowed[sol.assignment[v]];
        c.assignment[v] = tuple[0];  // v is first in its neighborhood
    }
    return c;
}

}  // namespace hypcsp
