#pragma once

#include <map>
#include <random>
#include <vector>

#include "hypcsp/csp.hpp"
#include "hypcsp/engine.hpp"
#include "hypcsp/tessellation.hpp"
#include "hypcsp/treedec.hpp"

// Minesweeper on embedded graphs: a clue-k cell is itself mine-free and
// has exactly k mines among its graph neighbors.

namespace hypcsp {

inline constexpr uint8_t kClear = 0;
inline constexpr uint8_t kMine = 1;

enum class Flag { kKnownMine, kKnownClear };

struct Board {
    HypGraph graph;
    std::map<int, int> clues;    // cell id -> shown number
    std::map<int, Flag> flags;   // externally supplied knowledge

    void check() const {
        for (auto& [cell, n] : clues) {
            if (cell < 0 || cell >= graph.num_vertices())
                throw std::invalid_argument("clue on unknown cell");
            if (n < 0 || n > graph.degree(cell))
                throw std::invalid_argument("clue out of range for cell degree");
            auto it = flags.find(cell);
            if (it != flags.end() && it->second == Flag::kKnownMine)
                throw std::invalid_argument("clue cell flagged as mine");
        }
        for (auto& [cell, f] : flags)
            if (cell < 0 || cell >= graph.num_vertices())
                throw std::invalid_argument("flag on unknown cell");
    }
};

// HLCSP encoding over K = {CLEAR, MINE}: the tuple list of a clue-k cell
// enumerates the C(deg,k) neighbor subsets; flags restrict the cell's own
// entry only (neighbors enforce their own constraints).
inline HLCSPInstance encode(const Board& b) {
    b.check();
    HLCSPInstance inst;
    inst.graph = b.graph;
    inst.colors = ColorSet{{"CLEAR", "MINE"}};
    inst.constraints.resize(b.graph.num_vertices());
    for (int v = 0; v < b.graph.num_vertices(); ++v) {
        VertexConstraint vc;
        vc.v = v;
        vc.neighbors = neighborhood(b.graph, v);
        size_t arity = vc.neighbors.size();

        auto clue_it = b.clues.find(v);
        auto flag_it = b.flags.find(v);
        int own = -1;  // -1 free, else forced color of v
        if (clue_it != b.clues.end()) own = kClear;
        else if (flag_it != b.flags.end())
            own = (flag_it->second == Flag::kKnownMine) ? kMine : kClear;
        int clue = (clue_it != b.clues.end()) ? clue_it->second : -1;

        // lexicographic enumeration over the ordered neighborhood
        std::vector<uint8_t> tuple(arity, 0);
        while (true) {
            bool admissible = true;
            if (own >= 0 && tuple[0] != own) admissible = false;
            if (admissible && clue >= 0) {
                int mines = 0;
                for (size_t i = 1; i < arity; ++i) mines += tuple[i] == kMine;
                admissible = (mines == clue);
            }
            if (admissible) vc.allowed.push_back(tuple);
            size_t i = arity;
            while (i > 0 && tuple[i - 1] == kMine) tuple[--i] = kClear;
            if (i == 0) break;
            tuple[i - 1] = kMine;
        }
        inst.constraints[v] = std::move(vc);
    }
    return inst;
}

// Seed count for decomposition runs; HYPCSP_SEEDS overrides the default.
inline int decomposition_seeds() {
    if (const char* env = std::getenv("HYPCSP_SEEDS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return 16;
}

// Full pipeline: encode -> reduce -> decompose -> nice -> DP decide.
inline bool consistent(const Board& b, int seeds = decomposition_seeds()) {
    auto [hecsp, dm] = reduce_to_hecsp(encode(b));
    NiceDecomposition nd = to_nice(b.graph, build_decomposition(b.graph, seeds));
    return decide(hecsp, nd);
}

enum class CellStatus { kForcedMine, kForcedClear, kAmbiguous };

struct DeductionResult {
    BigInt solution_count = 0;
    std::map<int, CellStatus> cells;  // unknown cells only; empty when count is 0
};

// Baseline count plus one re-count per unknown cell with that cell forced
// to MINE: zero -> FORCED_CLEAR, equal to baseline -> FORCED_MINE.
inline DeductionResult deduce(const Board& b, int seeds = decomposition_seeds()) {
    DeductionResult result;
    NiceDecomposition nd = to_nice(b.graph, build_decomposition(b.graph, seeds));
    auto count_board = [&](const Board& board) {
        auto [hecsp, dm] = reduce_to_hecsp(encode(board));
        return count(hecsp, nd);
    };
    result.solution_count = count_board(b);
    if (result.solution_count == 0) return result;
    for (int v = 0; v < b.graph.num_vertices(); ++v) {
        if (b.clues.count(v) || b.flags.count(v)) continue;
        Board forced = b;
        forced.flags[v] = Flag::kKnownMine;
        BigInt with_mine = count_board(forced);
        if (with_mine == 0) result.cells[v] = CellStatus::kForcedClear;
        else if (with_mine == result.solution_count) result.cells[v] = CellStatus::kForcedMine;
        else result.cells[v] = CellStatus::kAmbiguous;
    }
    return result;
}

// Seeded random board: iid mines, true counts, iid clue reveals on clear
// cells. Consistent by construction (the generating assignment satisfies it).
inline Board generate_board(const TilingSpec& spec, double mine_density, double reveal_fraction,
                            uint64_t seed) {
    if (mine_density < 0.0 || mine_density > 1.0 || reveal_fraction < 0.0 ||
        reveal_fraction > 1.0)
        throw std::invalid_argument("generate_board: probabilities must lie in [0,1]");
    Board b;
    b.graph = generate_tiling(spec);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int n = b.graph.num_vertices();
    std::vector<char> mine(n, 0);
    for (int v = 0; v < n; ++v) mine[v] = unit(rng) < mine_density;
    auto adj = b.graph.adjacency();
    for (int v = 0; v < n; ++v) {
        if (mine[v]) continue;
        if (unit(rng) < reveal_fraction) {
            int count = 0;
            for (int u : adj[v]) count += mine[u];
            b.clues[v] = count;
        }
    }
    return b;
}

}  // namespace hypcsp
