#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hypcsp/minesweeper.hpp"
#include "support.hpp"

using namespace hypcsp;
using namespace testsupport;

namespace {

// random sub-board of the ring-1 heptagon disk (8 cells) or a small
// random bounded-degree graph, with clues drawn from a real assignment
// or fully random depending on `truthful`
Board random_board(std::mt19937_64& rng, bool truthful) {
    Board b;
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
        b.graph = generate_tiling({7, 3, 1, {}});
    } else {
        b.graph = random_graph(rng, 12, 6, 0.35);
    }
    int n = b.graph.num_vertices();
    auto adj = b.graph.adjacency();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (truthful) {
        std::vector<char> mine(n, 0);
        for (int v = 0; v < n; ++v) mine[v] = unit(rng) < 0.3;
        for (int v = 0; v < n; ++v) {
            if (mine[v] || unit(rng) > 0.5) continue;
            int cnt = 0;
            for (int u : adj[v]) cnt += mine[u];
            b.clues[v] = cnt;
        }
    } else {
        for (int v = 0; v < n; ++v)
            if (unit(rng) < 0.4)
                b.clues[v] = std::uniform_int_distribution<int>(
                    0, static_cast<int>(adj[v].size()))(rng);
    }
    return b;
}

}  // namespace

TEST_CASE("encoding tuple counts") {
    Board b;
    b.graph = generate_tiling({7, 3, 1, {}});

    b.clues[0] = 0;
    CHECK(encode(b).constraints[0].allowed.size() == 1);

    b.clues[0] = 3;
    CHECK(encode(b).constraints[0].allowed.size() == 35);  // C(7,3)

    b.clues[0] = 8;  // exceeds degree 7
    CHECK_THROWS_AS(encode(b), std::invalid_argument);

    b.clues[0] = 2;
    b.flags[0] = Flag::kKnownMine;  // clue cell cannot be a mine
    CHECK_THROWS_AS(encode(b), std::invalid_argument);

    b.clues.clear();
    b.flags.clear();
    HLCSPInstance inst = encode(b);
    CHECK(inst.constraints[0].allowed.size() == 256);  // unconstrained full K^{N(v)}
    CHECK(inst.constraints[1].allowed.size() == 16);   // degree-3 boundary cell
}

TEST_CASE("consistency basics") {
    Board empty;
    empty.graph = generate_tiling({7, 3, 1, {}});
    CHECK(consistent(empty, 4));

    // clue 0 and clue 7 on adjacent cells sharing a neighbor is impossible
    Board clash;
    clash.graph = generate_tiling({7, 3, 1, {}});
    clash.clues[0] = 7;
    clash.clues[1] = 0;
    CHECK_FALSE(consistent(clash, 4));
}

TEST_CASE("consistency matches enumeration on random boards") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 250; ++trial) {
        Board b = random_board(rng, trial % 2 == 0);
        auto solutions = enumerate_boards(b);
        CHECK(consistent(b, 4) == !solutions.empty());
    }
}

TEST_CASE("encoding is a bijection onto mine assignments") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        Board b = random_board(rng, true);
        HLCSPInstance inst = encode(b);
        auto hl = enumerate_hlcsp(inst);
        auto mines = enumerate_boards(b);
        REQUIRE(hl.size() == mines.size());
        std::set<std::vector<uint8_t>> got, want;
        for (const auto& c : hl)
            got.insert(std::vector<uint8_t>(c.assignment.begin(), c.assignment.end()));
        for (const auto& m : mines) want.insert(m);
        CHECK(got == want);
    }
}

TEST_CASE("deduction matches enumeration") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
        Board b = random_board(rng, trial % 3 != 0);
        auto solutions = enumerate_boards(b);
        DeductionResult res = deduce(b, 4);
        REQUIRE(res.solution_count == BigInt(static_cast<unsigned long>(solutions.size())));
        if (solutions.empty()) {
            CHECK(res.cells.empty());
            continue;
        }
        for (auto& [cell, status] : res.cells) {
            int mined = 0;
            for (const auto& m : solutions) mined += m[cell];
            CellStatus expected = mined == 0 ? CellStatus::kForcedClear
                                 : mined == static_cast<int>(solutions.size())
                                     ? CellStatus::kForcedMine
                                     : CellStatus::kAmbiguous;
            CHECK(status == expected);
        }
    }
}

TEST_CASE("clue extremes force the whole neighborhood") {
    Board zero;
    zero.graph = generate_tiling({7, 3, 1, {}});
    zero.clues[0] = 0;
    DeductionResult res = deduce(zero, 4);
    for (int v = 1; v <= 7; ++v) CHECK(res.cells.at(v) == CellStatus::kForcedClear);

    Board full;
    full.graph = generate_tiling({7, 3, 1, {}});
    full.clues[0] = 7;
    res = deduce(full, 4);
    for (int v = 1; v <= 7; ++v) CHECK(res.cells.at(v) == CellStatus::kForcedMine);
}

TEST_CASE("knowledge monotonicity") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        Board b = random_board(rng, true);
        DeductionResult before = deduce(b, 4);
        if (before.solution_count == 0) continue;
        auto solutions = enumerate_boards(b);
        // flag one ambiguous cell consistently with some solution
        int target = -1;
        for (auto& [cell, status] : before.cells)
            if (status == CellStatus::kAmbiguous) { target = cell; break; }
        if (target < 0) continue;
        Board augmented = b;
        augmented.flags[target] =
            solutions.front()[target] ? Flag::kKnownMine : Flag::kKnownClear;
        DeductionResult after = deduce(augmented, 4);
        for (auto& [cell, status] : before.cells) {
            if (cell == target || status == CellStatus::kAmbiguous) continue;
            CHECK(after.cells.at(cell) == status);
        }
    }
}

TEST_CASE("board generation") {
    Board calm = generate_board({7, 3, 2, {}}, 0.0, 1.0, 1);
    CHECK(calm.clues.size() == static_cast<size_t>(calm.graph.num_vertices()));
    for (auto& [cell, n] : calm.clues) CHECK(n == 0);

    Board dark = generate_board({7, 3, 2, {}}, 1.0, 0.0, 2);
    CHECK(dark.clues.empty());
    CHECK(consistent(dark, 4));

    CHECK_THROWS_AS(generate_board({7, 3, 1, {}}, -0.1, 0.5, 3), std::invalid_argument);
    CHECK_THROWS_AS(generate_board({7, 3, 1, {}}, 0.5, 1.5, 3), std::invalid_argument);

    // clue-free boards have 2^n solutions
    Board free_board;
    free_board.graph = generate_tiling({7, 3, 1, {}});
    DeductionResult res = deduce(free_board, 4);
    CHECK(res.solution_count == 256);
}

TEST_CASE("generated boards are consistent and never mislabel true mines") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        Board b = generate_board({7, 3, 1, {}}, 0.35, 0.6, seed);
        CHECK(consistent(b, 4));
        // the generating assignment survives deduction: no consistent
        // solution set can force a cell against every solution
        auto solutions = enumerate_boards(b);
        REQUIRE(!solutions.empty());
        DeductionResult res = deduce(b, 4);
        for (auto& [cell, status] : res.cells) {
            bool some_mine = false, some_clear = false;
            for (const auto& m : solutions) (m[cell] ? some_mine : some_clear) = true;
            if (status == CellStatus::kForcedClear) CHECK_FALSE(some_mine);
            if (status == CellStatus::kForcedMine) CHECK_FALSE(some_clear);
        }
    }
}
