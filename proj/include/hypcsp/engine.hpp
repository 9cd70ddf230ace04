#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "hypcsp/csp.hpp"
#include "hypcsp/treedec.hpp"

// Dynamic programming over a nice decomposition: decide / count / witness /
// uniform sample for HECSP instances, plus the brute-force oracles the
// tests compare against. Counts are exact arbitrary-precision integers.

namespace hypcsp {

using BigInt = mpz_class;

// Coloring of one bag: color digits aligned with the sorted bag vertices.
// Lexicographic order of the digit vector is the canonical (mixed-radix)
// order used for witness tie-breaking.
using BagKey = std::vector<uint16_t>;

struct BagKeyHash {
    size_t operator()(const BagKey& k) const {
        uint64_t h = 1469598103934665603ull;
        for (uint16_t d : k) {
            h ^= d;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

using BagTable = std::unordered_map<BagKey, BigInt, BagKeyHash>;

struct SolutionTable {
    std::vector<BagTable> per_node;  // aligned with NiceDecomposition::nodes
    BigInt total = 0;
};

// Thrown by sample() when the instance has no solutions.
struct UnsatError : std::runtime_error {
    UnsatError() : std::runtime_error("instance is unsatisfiable") {}
};

namespace detail {

inline int bag_position(const std::vector<int>& bag, int v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw std::logic_error("vertex not in bag");
    return static_cast<int>(it - bag.begin());
}

inline void check_dp_inputs(const HECSPInstance& inst, const NiceDecomposition& nd) {
    if (static_cast<int>(inst.admissible.size()) != inst.graph.num_vertices())
        throw std::invalid_argument("admissible counts do not match graph");
    if (inst.graph.num_vertices() > 0 && nd.nodes.empty())
        throw std::invalid_argument("decomposition does not match graph");
    std::vector<int> assigned(inst.graph.num_edges(), 0);
    for (const auto& node : nd.nodes) {
        for (int v : node.bag)
            if (v < 0 || v >= inst.graph.num_vertices())
                throw std::invalid_argument("decomposition bag references unknown vertex");
        for (int e : node.edge_checks) {
            if (e < 0 || e >= inst.graph.num_edges())
                throw std::invalid_argument("edge check out of range");
            ++assigned[e];
        }
    }
    for (int e = 0; e < inst.graph.num_edges(); ++e)
        if (assigned[e] != 1)
            throw std::invalid_argument("every edge must be checked exactly once");
}

}  // namespace detail

// Bottom-up table computation. With retain_all the per-node tables are
// kept so that witness extraction and sampling can run top-down
// afterwards; counting alone releases each child table once consumed,
// which bounds peak memory by a few tables instead of all of them.
inline SolutionTable run_dp(const HECSPInstance& inst, const NiceDecomposition& nd,
                            bool retain_all = true) {
    detail::check_dp_inputs(inst, nd);
    SolutionTable result;
    result.per_node.resize(nd.nodes.size());
    if (nd.nodes.empty()) {
        result.total = 1;  // the empty coloring
        return result;
    }

    std::vector<int> order = nd.preorder();
    std::reverse(order.begin(), order.end());  // children before parents

    for (int idx : order) {
        const NiceNode& node = nd.nodes[idx];
        BagTable& table = result.per_node[idx];
        switch (node.kind) {
            case NodeKind::kLeaf: {
                int v = node.vertex;
                for (int j = 0; j < inst.admissible[v]; ++j)
                    table[{static_cast<uint16_t>(j)}] = 1;
                break;
            }
            case NodeKind::kIntroduce: {
                const BagTable& child = result.per_node[node.child0];
                int v = node.vertex;
                int pv = detail::bag_position(node.bag, v);
                // precompute the bag positions of the other endpoints
                std::vector<std::pair<int, bool>> checks;  // (position of other, v is lower id)
                for (int e : node.edge_checks) {
                    auto [a, b] = inst.graph.edges[e];
                    int other = (a == v) ? b : a;
                    if (other == v || (a != v && b != v))
                        throw std::logic_error("edge check not incident to introduced vertex");
                    checks.emplace_back(detail::bag_position(node.bag, other), v == a);
                }
                for (const auto& [ckey, ccount] : child) {
                    BagKey key(ckey.size() + 1);
                    std::copy(ckey.begin(), ckey.begin() + pv, key.begin());
                    std::copy(ckey.begin() + pv, ckey.end(), key.begin() + pv + 1);
                    for (int j = 0; j < inst.admissible[v]; ++j) {
                        key[pv] = static_cast<uint16_t>(j);
                        bool ok = true;
                        for (size_t c = 0; c < checks.size(); ++c) {
                            auto [po, v_is_lower] = checks[c];
                            int jo = key[po];
                            bool allowed = v_is_lower
                                               ? inst.pair_allowed(node.edge_checks[c], j, jo)
                                               : inst.pair_allowed(node.edge_checks[c], jo, j);
                            if (!allowed) { ok = false; break; }
                        }
                        if (ok) table[key] += ccount;
                    }
                }
                break;
            }
            case NodeKind::kForget: {
                const BagTable& child = result.per_node[node.child0];
                int pv = detail::bag_position(nd.nodes[node.child0].bag, node.vertex);
                for (const auto& [ckey, ccount] : child) {
                    BagKey key(ckey);
                    key.erase(key.begin() + pv);
                    table[key] += ccount;
                }
                break;
            }
            case NodeKind::kJoin: {
                const BagTable& left = result.per_node[node.child0];
                const BagTable& right = result.per_node[node.child1];
                const BagTable& small = left.size() <= right.size() ? left : right;
                const BagTable& large = left.size() <= right.size() ? right : left;
                for (const auto& [key, cnt] : small) {
                    auto it = large.find(key);
                    if (it != large.end()) table[key] = cnt * it->second;
                }
                break;
            }
        }
        if (!retain_all && node.kind != NodeKind::kLeaf) {
            result.per_node[node.child0] = BagTable{};
            if (node.kind == NodeKind::kJoin) result.per_node[node.child1] = BagTable{};
        }
    }

    const BagTable& root_table = result.per_node[nd.root];
    auto it = root_table.find(BagKey{});
    result.total = (it == root_table.end()) ? BigInt(0) : it->second;
    return result;
}

inline BigInt count(const HECSPInstance& inst, const NiceDecomposition& nd) {
    return run_dp(inst, nd, /*retain_all=*/false).total;
}

inline bool decide(const HECSPInstance& inst, const NiceDecomposition& nd) {
    return count(inst, nd) > 0;
}

namespace detail {

// uniform random integer in [0, bound) from a seeded mt19937_64
inline BigInt random_below(std::mt19937_64& rng, const BigInt& bound) {
    if (bound <= 0) throw std::logic_error("random_below: empty range");
    size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    while (true) {
        BigInt x = 0;
        size_t produced = 0;
        while (produced < bits) {
            x <<= 64;
            x += BigInt(static_cast<unsigned long>(rng() & 0xffffffffull)) << 32 |
                 BigInt(static_cast<unsigned long>(rng() & 0xffffffffull));
            produced += 64;
        }
        x >>= (produced - bits);
        if (x < bound) return x;
    }
}

// Top-down trace shared by witness and sample. `pick` chooses the color
// of the vertex being resolved at a Forget node, given the (color, count)
// alternatives in canonical order.
template <typename Picker>
Coloring trace(const HECSPInstance& inst, const NiceDecomposition& nd,
               const SolutionTable& tables, Picker&& pick) {
    Coloring c;
    c.assignment.assign(inst.graph.num_vertices(), 0);
    if (nd.nodes.empty()) return c;

    struct Item { int node; BagKey key; };
    std::vector<Item> stack{{nd.root, {}}};
    while (!stack.empty()) {
        auto [idx, key] = std::move(stack.back());
        stack.pop_back();
        const NiceNode& node = nd.nodes[idx];
        for (size_t i = 0; i < node.bag.size(); ++i)
            c.assignment[node.bag[i]] = key[i];
        switch (node.kind) {
            case NodeKind::kLeaf:
                break;
            case NodeKind::kIntroduce: {
                int pv = bag_position(node.bag, node.vertex);
                BagKey ckey(key);
                ckey.erase(ckey.begin() + pv);
                stack.push_back({node.child0, std::move(ckey)});
                break;
            }
            case NodeKind::kForget: {
                const std::vector<int>& cbag = nd.nodes[node.child0].bag;
                int pv = bag_position(cbag, node.vertex);
                const BagTable& child = tables.per_node[node.child0];
                std::vector<std::pair<int, const BigInt*>> options;
                BagKey probe(key);
                probe.insert(probe.begin() + pv, 0);
                for (int j = 0; j < inst.admissible[node.vertex]; ++j) {
                    probe[pv] = static_cast<uint16_t>(j);
                    auto it = child.find(probe);
                    if (it != child.end()) options.emplace_back(j, &it->second);
                }
                if (options.empty()) throw std::logic_error("trace: dead end");
                int j = pick(options);
                probe[pv] = static_cast<uint16_t>(j);
                stack.push_back({node.child0, std::move(probe)});
                break;
            }
            case NodeKind::kJoin:
                stack.push_back({node.child0, key});
                stack.push_back({node.child1, key});
                break;
        }
    }
    return c;
}

}  // namespace detail

inline std::optional<Coloring> witness_from_tables(const HECSPInstance& inst,
                                                   const NiceDecomposition& nd,
                                                   const SolutionTable& tables) {
    if (tables.total == 0) return std::nullopt;
    // options arrive in ascending color order; smallest canonical choice
    return detail::trace(inst, nd, tables,
                         [](const auto& options) { return options.front().first; });
}

inline std::optional<Coloring> witness(const HECSPInstance& inst, const NiceDecomposition& nd) {
    SolutionTable tables = run_dp(inst, nd);
    return witness_from_tables(inst, nd, tables);
}

// Exactly uniform over the solution set: at each Forget node the color is
// chosen with probability proportional to its extension count.
inline Coloring sample_from_tables(const HECSPInstance& inst, const NiceDecomposition& nd,
                                   const SolutionTable& tables, uint64_t seed) {
    if (tables.total == 0) throw UnsatError();
    std::mt19937_64 rng(seed);
    return detail::trace(inst, nd, tables, [&](const auto& options) {
        BigInt total = 0;
        for (const auto& [j, cnt] : options) total += *cnt;
        BigInt x = detail::random_below(rng, total);
        for (const auto& [j, cnt] : options) {
            if (x < *cnt) return j;
            x -= *cnt;
        }
        return options.back().first;
    });
}

inline Coloring sample(const HECSPInstance& inst, const NiceDecomposition& nd, uint64_t seed) {
    SolutionTable tables = run_dp(inst, nd);
    return sample_from_tables(inst, nd, tables, seed);
}

inline constexpr int kBruteForceVertexCap = 24;

// Exhaustive count over all color assignments, with early pruning on the
// edges already fully assigned. Oracle only; guarded against runaway use.
inline BigInt brute_force_count(const HECSPInstance& inst) {
    int n = inst.graph.num_vertices();
    if (n > kBruteForceVertexCap)
        throw std::invalid_argument("brute_force_count: vertex cap exceeded");
    // edges whose higher-indexed endpoint is v
    std::vector<std::vector<int>> pending(n);
    for (int e = 0; e < inst.graph.num_edges(); ++e)
        pending[std::max(inst.graph.edges[e].first, inst.graph.edges[e].second)].push_back(e);

    BigInt total = 0;
    std::vector<int> color(n, 0);
    auto recurse = [&](auto&& self, int v) -> void {
        if (v == n) { ++total; return; }
        for (int j = 0; j < inst.admissible[v]; ++j) {
            color[v] = j;
            bool ok = true;
            for (int e : pending[v]) {
                auto [a, b] = inst.graph.edges[e];
                if (!inst.pair_allowed(e, color[a], color[b])) { ok = false; break; }
            }
            if (ok) self(self, v + 1);
        }
    };
    recurse(recurse, 0);
    return total;
}

inline BigInt brute_force_count_hlcsp(const HLCSPInstance& inst) {
    int n = inst.graph.num_vertices();
    if (n > kBruteForceVertexCap)
        throw std::invalid_argument("brute_force_count_hlcsp: vertex cap exceeded");
    int k = inst.colors.size();
    // constraints become checkable once their last neighborhood vertex is set
    std::vector<std::vector<const VertexConstraint*>> ready_at(n);
    for (const auto& vc : inst.constraints) {
        int last = *std::max_element(vc.neighbors.begin(), vc.neighbors.end());
        ready_at[last].push_back(&vc);
    }
    BigInt total = 0;
    std::vector<uint8_t> color(n, 0);
    auto recurse = [&](auto&& self, int v) -> void {
        if (v == n) { ++total; return; }
        for (int j = 0; j < k; ++j) {
            color[v] = static_cast<uint8_t>(j);
            bool ok = true;
            for (const VertexConstraint* vc : ready_at[v]) {
                std::vector<uint8_t> restriction;
                restriction.reserve(vc->neighbors.size());
                for (int u : vc->neighbors) restriction.push_back(color[u]);
                if (std::find(vc->allowed.begin(), vc->allowed.end(), restriction) ==
                    vc->allowed.end()) { ok = false; break; }
            }
            if (ok) self(self, v + 1);
        }
    };
    recurse(recurse, 0);
    return total;
}

}  // namespace hypcsp
