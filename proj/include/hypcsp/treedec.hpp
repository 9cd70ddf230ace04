#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <random>
#include <sstream>
#include <unordered_set>
#include <vector>

#include "hypcsp/graph.hpp"
#include "hypcsp/tessellation.hpp"

// Tree decompositions: randomized min-fill builder, strict validator, and
// normalization to the nice (Leaf/Introduce/Forget/Join) form that drives
// the DP engine.

namespace hypcsp {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;        // sorted vertex ids per node
    std::vector<std::pair<int, int>> tree_edges;
    int root = 0;

    int num_nodes() const { return static_cast<int>(bags.size()); }

    int width() const {
        size_t w = 0;
        for (const auto& b : bags) w = std::max(w, b.size());
        return static_cast<int>(w) - 1;
    }
};

inline ValidationReport validate_decomposition(const HypGraph& g, const TreeDecomposition& t) {
    ValidationReport report;
    auto add = [&](const std::string& msg) { report.violations.push_back({msg}); };
    int nodes = t.num_nodes();

    if (nodes == 0) {
        if (g.num_vertices() != 0) add("empty decomposition of a non-empty graph");
        return report;
    }

    // tree-ness: right edge count + connected (implies acyclic)
    if (static_cast<int>(t.tree_edges.size()) != nodes - 1)
        add("tree edge count is not nodes-1");
    std::vector<std::vector<int>> tadj(nodes);
    bool edges_ok = true;
    for (auto& [a, b] : t.tree_edges) {
        if (a < 0 || b < 0 || a >= nodes || b >= nodes || a == b) {
            add("tree edge endpoint out of range");
            edges_ok = false;
            continue;
        }
        tadj[a].push_back(b);
        tadj[b].push_back(a);
    }
    if (edges_ok) {
        std::vector<char> seen(nodes, 0);
        std::deque<int> q{0};
        seen[0] = 1;
        int reached = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : tadj[x])
                if (!seen[y]) { seen[y] = 1; ++reached; q.push_back(y); }
        }
        if (reached != nodes) add("tree is disconnected");
    }

    for (const auto& bag : t.bags)
        for (int v : bag)
            if (v < 0 || v >= g.num_vertices()) add("bag contains unknown vertex");

    // coverage
    std::vector<char> covered(g.num_vertices(), 0);
    for (const auto& bag : t.bags)
        for (int v : bag)
            if (v >= 0 && v < g.num_vertices()) covered[v] = 1;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (!covered[v]) {
            std::ostringstream os;
            os << "coverage: vertex " << v << " appears in no bag";
            add(os.str());
        }

    // edge coverage
    for (auto& [u, v] : g.edges) {
        bool found = false;
        for (const auto& bag : t.bags)
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v)) { found = true; break; }
        if (!found) {
            std::ostringstream os;
            os << "edge coverage: no bag contains both " << u << " and " << v;
            add(os.str());
        }
    }

    // per-vertex connectivity of the occurrence set
    for (int v = 0; v < g.num_vertices(); ++v) {
        std::vector<int> holding;
        for (int b = 0; b < nodes; ++b)
            if (std::binary_search(t.bags[b].begin(), t.bags[b].end(), v)) holding.push_back(b);
        if (holding.size() <= 1) continue;
        std::unordered_set<int> members(holding.begin(), holding.end());
        std::unordered_set<int> seen{holding[0]};
        std::deque<int> q{holding[0]};
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : tadj[x])
                if (members.count(y) && !seen.count(y)) { seen.insert(y); q.push_back(y); }
        }
        if (seen.size() != members.size()) {
            std::ostringstream os;
            os << "connectivity: bags holding vertex " << v << " are disconnected";
            add(os.str());
        }
    }
    return report;
}

namespace detail {

// One randomized min-fill run: eliminate a vertex of minimum fill-in (ties
// uniform), bag it with its current neighbors, connect those neighbors.
inline TreeDecomposition min_fill_run(const HypGraph& g, uint64_t seed) {
    int n = g.num_vertices();
    std::mt19937_64 rng(seed);
    std::vector<std::unordered_set<int>> adj(n);
    for (auto& [u, v] : g.edges) {
        adj[u].insert(v);
        adj[v].insert(u);
    }

    auto fill_cost = [&](int v) {
        long long missing = 0;
        std::vector<int> nb(adj[v].begin(), adj[v].end());
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (!adj[nb[i]].count(nb[j])) ++missing;
        return missing;
    };

    std::vector<long long> cost(n, 0);
    std::vector<char> alive(n, 1), dirty(n, 1);

    TreeDecomposition t;
    std::vector<int> node_of(n, -1), elim_time(n, -1);

    for (int step = 0; step < n; ++step) {
        long long best = -1;
        std::vector<int> ties;
        for (int v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            if (dirty[v]) { cost[v] = fill_cost(v); dirty[v] = 0; }
            if (best < 0 || cost[v] < best) { best = cost[v]; ties = {v}; }
            else if (cost[v] == best) ties.push_back(v);
        }
        int v = ties[std::uniform_int_distribution<size_t>(0, ties.size() - 1)(rng)];

        std::vector<int> bag(adj[v].begin(), adj[v].end());
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        node_of[v] = t.num_nodes();
        elim_time[v] = step;
        t.bags.push_back(bag);

        std::vector<int> nb(adj[v].begin(), adj[v].end());
        for (int u : nb) { adj[u].erase(v); dirty[u] = 1; }
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j)
                if (adj[nb[i]].insert(nb[j]).second) {
                    adj[nb[j]].insert(nb[i]);
                    // fill costs of common neighbors of the new pair change
                    const auto& small = adj[nb[i]].size() < adj[nb[j]].size() ? adj[nb[i]] : adj[nb[j]];
                    const auto& large = adj[nb[i]].size() < adj[nb[j]].size() ? adj[nb[j]] : adj[nb[i]];
                    for (int w : small)
                        if (large.count(w)) dirty[w] = 1;
                }
        adj[v].clear();
        alive[v] = 0;
    }

    // parent of v's bag: the earliest-eliminated other member of the bag
    std::vector<int> roots;
    for (int v = 0; v < n; ++v) {
        int parent_vertex = -1;
        for (int u : t.bags[node_of[v]])
            if (u != v && (parent_vertex < 0 || elim_time[u] < elim_time[parent_vertex]))
                parent_vertex = u;
        if (parent_vertex >= 0)
            t.tree_edges.emplace_back(node_of[v], node_of[parent_vertex]);
        else
            roots.push_back(node_of[v]);
    }
    if (roots.size() > 1) {
        // disconnected graph: hang all component roots under one empty bag
        int super = t.num_nodes();
        t.bags.push_back({});
        for (int r : roots) t.tree_edges.emplace_back(r, super);
        t.root = super;
    } else if (!roots.empty()) {
        t.root = roots[0];
    }
    return t;
}

}  // namespace detail

// Best of `seeds` randomized min-fill runs; deterministic given `seeds`.
inline TreeDecomposition build_decomposition(const HypGraph& g, int seeds = 16) {
    if (seeds < 1) throw std::invalid_argument("need at least one seed");
    if (g.num_vertices() == 0) return {};
    TreeDecomposition best;
    for (int s = 0; s < seeds; ++s) {
        TreeDecomposition t = detail::min_fill_run(g, static_cast<uint64_t>(s));
        if (s == 0 || t.width() < best.width()) best = std::move(t);
    }
    return best;
}

enum class NodeKind { kLeaf, kIntroduce, kForget, kJoin };

struct NiceNode {
    NodeKind kind = NodeKind::kLeaf;
    int vertex = -1;  // introduced / forgotten / leaf vertex, -1 for Join
    std::vector<int> bag;  // sorted
    int child0 = -1;
    int child1 = -1;
    std::vector<int> edge_checks;  // indices into graph.edges, Introduce only
};

struct NiceDecomposition {
    std::vector<NiceNode> nodes;
    int root = -1;

    int width() const {
        size_t w = 0;
        for (const auto& nd : nodes) w = std::max(w, nd.bag.size());
        return static_cast<int>(w) - 1;
    }

    TreeDecomposition as_tree_decomposition() const {
        TreeDecomposition t;
        for (const auto& nd : nodes) t.bags.push_back(nd.bag);
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
            if (nodes[i].child0 >= 0) t.tree_edges.emplace_back(i, nodes[i].child0);
            if (nodes[i].child1 >= 0) t.tree_edges.emplace_back(i, nodes[i].child1);
        }
        t.root = root;
        return t;
    }

    // parent-before-child ordering for top-down passes
    std::vector<int> preorder() const {
        std::vector<int> order;
        if (root < 0) return order;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            order.push_back(x);
            if (nodes[x].child0 >= 0) stack.push_back(nodes[x].child0);
            if (nodes[x].child1 >= 0) stack.push_back(nodes[x].child1);
        }
        return order;
    }
};

namespace detail {

struct NiceBuilder {
    const HypGraph& graph;
    std::vector<NiceNode> nodes;

    int emit(NodeKind kind, int vertex, std::vector<int> bag, int c0 = -1, int c1 = -1) {
        nodes.push_back({kind, vertex, std::move(bag), c0, c1, {}});
        return static_cast<int>(nodes.size()) - 1;
    }

    // chain of Leaf + Introduce nodes realizing `bag` from scratch
    int leaf_chain(const std::vector<int>& bag) {
        int cur = emit(NodeKind::kLeaf, bag[0], {bag[0]});
        std::vector<int> acc{bag[0]};
        for (size_t i = 1; i < bag.size(); ++i) {
            acc.push_back(bag[i]);
            std::sort(acc.begin(), acc.end());
            cur = emit(NodeKind::kIntroduce, bag[i], acc, cur);
        }
        return cur;
    }

    // forget/introduce chain transforming subtree top bag `from` into `to`
    int lift(int subtree, std::vector<int> from, const std::vector<int>& to) {
        int cur = subtree;
        for (int v : std::vector<int>(from)) {
            if (!std::binary_search(to.begin(), to.end(), v)) {
                from.erase(std::find(from.begin(), from.end(), v));
                cur = emit(NodeKind::kForget, v, from, cur);
            }
        }
        for (int v : to) {
            if (!std::binary_search(from.begin(), from.end(), v)) {
                from.push_back(v);
                std::sort(from.begin(), from.end());
                cur = emit(NodeKind::kIntroduce, v, from, cur);
            }
        }
        return cur;
    }
};

}  // namespace detail

// Normalize a valid decomposition to nice form: subset bags contracted
// away, every node one of the four cases, root bag forgotten down to
// empty, and each graph edge assigned to exactly one Introduce node (the
// lowest node whose bag contains both endpoints).
inline NiceDecomposition to_nice(const HypGraph& g, const TreeDecomposition& t) {
    ValidationReport rep = validate_decomposition(g, t);
    if (!rep.pass())
        throw std::invalid_argument("to_nice: input is not a valid tree decomposition: " +
                                    rep.violations.front().message);
    NiceDecomposition out;
    if (t.num_nodes() == 0) return out;

    // contract tree edges where one bag contains the other
    int n = t.num_nodes();
    std::vector<std::vector<int>> bags = t.bags;
    std::vector<std::unordered_set<int>> tadj(n);
    for (auto& [a, b] : t.tree_edges) {
        tadj[a].insert(b);
        tadj[b].insert(a);
    }
    std::vector<char> alive(n, 1);
    auto subset = [](const std::vector<int>& a, const std::vector<int>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n && !changed; ++a) {
            if (!alive[a]) continue;
            for (int b : tadj[a]) {
                if (!subset(bags[a], bags[b])) continue;
                // merge a into b
                for (int c : tadj[a])
                    if (c != b) { tadj[c].erase(a); tadj[c].insert(b); tadj[b].insert(c); }
                tadj[b].erase(a);
                alive[a] = 0;
                changed = true;
                break;
            }
        }
    }

    int root = -1;
    for (int i = 0; i < n; ++i)
        if (alive[i]) { root = i; break; }

    detail::NiceBuilder builder{g, {}};

    // iterative post-order over the contracted tree
    struct Frame { int node; int parent; size_t next_child; std::vector<int> children; std::vector<int> built; };
    std::vector<Frame> stack;
    auto children_of = [&](int node, int parent) {
        std::vector<int> cs(tadj[node].begin(), tadj[node].end());
        cs.erase(std::remove(cs.begin(), cs.end(), parent), cs.end());
        std::sort(cs.begin(), cs.end());
        return cs;
    };
    stack.push_back({root, -1, 0, children_of(root, -1), {}});
    int built_root = -1;
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_child < f.children.size()) {
            int c = f.children[f.next_child++];
            stack.push_back({c, f.node, 0, children_of(c, f.node), {}});
            continue;
        }
        int top;
        if (f.built.empty()) {
            top = builder.leaf_chain(bags[f.node]);
        } else {
            top = f.built[0];
            for (size_t i = 1; i < f.built.size(); ++i)
                top = builder.emit(NodeKind::kJoin, -1, bags[f.node], top, f.built[i]);
        }
        int parent = f.parent;
        int me = f.node;
        stack.pop_back();
        if (parent < 0) {
            built_root = top;
        } else {
            // lift my bag to the parent's and hand the subtree up
            int lifted = builder.lift(top, bags[me], bags[parent]);
            stack.back().built.push_back(lifted);
        }
    }

    // forget the root bag down to empty
    {
        std::vector<int> bag = bags[root];
        int cur = built_root;
        while (!bag.empty()) {
            int v = bag.front();
            bag.erase(bag.begin());
            cur = builder.emit(NodeKind::kForget, v, bag, cur);
        }
        built_root = cur;
    }

    out.nodes = std::move(builder.nodes);
    out.root = built_root;

    // assign each edge to the lowest Introduce node containing both ends;
    // nodes were emitted children-first, so index order is a post-order
    std::vector<char> assigned(g.edges.size(), 0);
    std::vector<std::vector<std::pair<int, int>>> edges_at(g.num_vertices());
    for (int e = 0; e < g.num_edges(); ++e) {
        edges_at[g.edges[e].first].emplace_back(e, g.edges[e].second);
        edges_at[g.edges[e].second].emplace_back(e, g.edges[e].first);
    }
    for (auto& node : out.nodes) {
        if (node.kind != NodeKind::kIntroduce) continue;
        for (auto& [e, other] : edges_at[node.vertex]) {
            if (assigned[e]) continue;
            if (std::binary_search(node.bag.begin(), node.bag.end(), other)) {
                assigned[e] = 1;
                node.edge_checks.push_back(e);
            }
        }
    }
    for (int e = 0; e < g.num_edges(); ++e)
        if (!assigned[e]) throw std::logic_error("to_nice: edge left unassigned");
    return out;
}

// Convenience: generate each tiling, decompose, record (|V|, width).
inline std::vector<std::pair<int, int>> width_profile(const std::vector<TilingSpec>& specs,
                                                      int seeds = 16) {
    std::vector<std::pair<int, int>> out;
    for (const auto& spec : specs) {
        HypGraph g = generate_tiling(spec);
        TreeDecomposition t = build_decomposition(g, seeds);
        out.emplace_back(g.num_vertices(), g.num_vertices() ? t.width() : 0);
    }
    return out;
}

}  // namespace hypcsp
