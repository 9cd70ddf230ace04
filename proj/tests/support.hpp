#pragma once

// Shared test machinery: random instance generators, independent
// enumeration oracles, an exact small-graph treewidth routine, and a
// chi-square p-value. Everything here is deliberately independent of the
// DP implementation it cross-checks.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hypcsp/csp.hpp"
#include "hypcsp/graph.hpp"
#include "hypcsp/minesweeper.hpp"

namespace testsupport {

using namespace hypcsp;

// Graph with dummy embedding (solvers never look at positions).
inline HypGraph random_graph(std::mt19937_64& rng, int max_vertices, int max_degree,
                             double edge_prob) {
    int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    HypGraph g;
    g.positions.assign(n, HypPoint::origin());
    g.r = 1.0;
    g.d = 2.0;
    std::vector<int> deg(n, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (deg[u] < max_degree && deg[v] < max_degree && unit(rng) < edge_prob) {
                g.add_edge(u, v);
                ++deg[u];
                ++deg[v];
            }
    g.finalize_edges();
    return g;
}

inline HLCSPInstance random_hlcsp(std::mt19937_64& rng, int max_vertices, int num_colors,
                                  double tuple_keep_prob) {
    HLCSPInstance inst;
    inst.graph = random_graph(rng, max_vertices, 4, 0.35);
    inst.colors.names.clear();
    for (int i = 0; i < num_colors; ++i) inst.colors.names.push_back("c" + std::to_string(i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int v = 0; v < inst.graph.num_vertices(); ++v) {
        VertexConstraint vc;
        vc.v = v;
        vc.neighbors = neighborhood(inst.graph, v);
        std::vector<uint8_t> tuple(vc.neighbors.size(), 0);
        while (true) {
            if (unit(rng) < tuple_keep_prob) vc.allowed.push_back(tuple);
            size_t i = tuple.size();
            while (i > 0 && tuple[i - 1] == num_colors - 1) tuple[--i] = 0;
            if (i == 0) break;
            ++tuple[i - 1];
        }
        inst.constraints.push_back(std::move(vc));
    }
    return inst;
}

inline HECSPInstance random_hecsp(std::mt19937_64& rng, int max_vertices, int num_colors,
                                  double pair_keep_prob) {
    HECSPInstance inst;
    inst.graph = random_graph(rng, max_vertices, 6, 0.4);
    inst.num_colors = num_colors;
    inst.admissible.assign(inst.graph.num_vertices(), num_colors);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int e = 0; e < inst.graph.num_edges(); ++e) {
        std::vector<uint8_t> mat(num_colors * num_colors, 0);
        for (auto& cell : mat) cell = unit(rng) < pair_keep_prob;
        inst.edge_allowed.push_back(std::move(mat));
    }
    return inst;
}

// Exhaustive solution list (independent of both the DP and the counting
// brute force in the engine).
inline std::vector<Coloring> enumerate_hecsp(const HECSPInstance& inst) {
    std::vector<Coloring> out;
    int n = inst.graph.num_vertices();
    Coloring c;
    c.assignment.assign(n, 0);
    // edges ending at v whose other endpoint was already assigned
    std::vector<std::vector<std::pair<int, int>>> back(n);  // (edge_idx, lower vertex)
    for (int e = 0; e < inst.graph.num_edges(); ++e) {
        auto [u, v] = inst.graph.edges[e];
        back[v].emplace_back(e, u);
    }
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            out.push_back(c);
            return;
        }
        for (int j = 0; j < inst.admissible[v]; ++j) {
            c.assignment[v] = static_cast<uint16_t>(j);
            bool ok = true;
            for (auto& [e, u] : back[v])
                if (!inst.pair_allowed(e, c.assignment[u], j)) { ok = false; break; }
            if (ok) self(self, v + 1);
        }
    };
    rec(rec, 0);
    return out;
}

inline std::vector<Coloring> enumerate_hlcsp(const HLCSPInstance& inst) {
    std::vector<Coloring> out;
    int n = inst.graph.num_vertices();
    int k = inst.colors.size();
    Coloring c;
    c.assignment.assign(n, 0);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == n) {
            if (check_hlcsp(inst, c)) out.push_back(c);
            return;
        }
        for (int j = 0; j < k; ++j) {
            c.assignment[v] = static_cast<uint16_t>(j);
            self(self, v + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// Mine assignments satisfying a board, by 2^n enumeration.
inline std::vector<std::vector<uint8_t>> enumerate_boards(const Board& b) {
    std::vector<std::vector<uint8_t>> out;
    int n = b.graph.num_vertices();
    auto adj = b.graph.adjacency();
    for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<uint8_t> mine(n, 0);
        for (int v = 0; v < n; ++v) mine[v] = (mask >> v) & 1;
        bool ok = true;
        for (auto& [cell, num] : b.clues) {
            if (mine[cell]) { ok = false; break; }
            int cnt = 0;
            for (int u : adj[cell]) cnt += mine[u];
            if (cnt != num) { ok = false; break; }
        }
        if (ok)
            for (auto& [cell, f] : b.flags)
                if (mine[cell] != (f == Flag::kKnownMine)) { ok = false; break; }
        if (ok) out.push_back(std::move(mine));
    }
    return out;
}

// Exact treewidth of a tiny graph: minimum over all elimination orders of
// the largest bag encountered, minus one.
inline int exact_treewidth(const HypGraph& g) {
    int n = g.num_vertices();
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    int best = n;
    do {
        std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
        for (auto& [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;
        std::vector<char> gone(n, 0);
        int width = 0;
        for (int v : order) {
            std::vector<int> nb;
            for (int u = 0; u < n; ++u)
                if (!gone[u] && adj[v][u]) nb.push_back(u);
            width = std::max(width, static_cast<int>(nb.size()));
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j) adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
            gone[v] = 1;
            if (width >= best) break;
        }
        best = std::min(best, width);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

// Ring populations of the {p,3} tiling by the substitution rules: a tile
// with one parent spawns p-3 children, one with two parents spawns p-4,
// and adjacent tiles of a ring share one child.
inline std::vector<long long> ring_counts_p3(int p, int rings) {
    std::vector<long long> counts{1};
    if (rings == 0) return counts;
    long long one_parent = p, two_parent = 0;
    counts.push_back(p);
    for (int r = 2; r <= rings; ++r) {
        long long next_one = (p - 5) * one_parent + (p - 6) * two_parent;
        long long next_two = one_parent + two_parent;
        one_parent = next_one;
        two_parent = next_two;
        counts.push_back(one_parent + two_parent);
    }
    return counts;
}

// Upper regularized incomplete gamma Q(a,x), series + continued fraction.
inline double gamma_q(double a, double x) {
    if (x < 0 || a <= 0) return 0.0;
    if (x == 0) return 1.0;
    if (x < a + 1.0) {
        // P(a,x) by series
        double sum = 1.0 / a, term = sum, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        return 1.0 - p;
    }
    // Q(a,x) by Lentz continued fraction
    double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// p-value of a chi-square statistic with the given degrees of freedom
inline double chi_square_pvalue(double stat, int dof) {
    return gamma_q(dof / 2.0, stat / 2.0);
}

}  // namespace testsupport
