// End-to-end checks of the command-line tool. The binary path comes from
// the HYPCSP_CLI environment variable (set by the CTest configuration).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "hypcsp/io.hpp"
#include "hypcsp/minesweeper.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("HYPCSP_CLI");
    REQUIRE(p != nullptr);
    return p;
}

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_file(const std::string& name) {
    return std::string("/tmp/hypcsp_cli_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("gen writes a parseable instance") {
    auto res = run("gen --p 7 --q 3 --rings 1");
    CHECK(res.exit_code == 0);
    hypcsp::InstanceFile file = hypcsp::read_instance(res.out);
    CHECK(file.graph.num_vertices() == 8);
    // 7 spokes plus 7 edges between consecutive ring cells (q = 3)
    CHECK(file.graph.num_edges() == 14);

    CHECK(run("gen --p 4 --q 4 --rings 2").exit_code == 2);
    CHECK(run("gen --p 7 --q 3 --rings 99").exit_code == 2);
}

TEST_CASE("gen then validate passes") {
    std::string path = temp_file("gen4.json");
    CHECK(run("gen --p 7 --q 3 --rings 4 --out " + path).exit_code == 0);
    auto res = run("validate --in " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("embedding: PASS") == 0);
}

TEST_CASE("count and solve on boards") {
    // clue-free 8-cell board counts 2^8
    hypcsp::InstanceFile file;
    file.graph = hypcsp::generate_tiling({7, 3, 1, {}});
    file.board = hypcsp::BoardSection{{}, {}};
    std::string path = temp_file("free.json");
    write_file(path, hypcsp::write_instance(file));
    auto res = run("count --in " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.out == "256\n");

    // adjacent 0/7 clues are unsatisfiable
    file.board = hypcsp::BoardSection{{{0, 7}, {1, 0}}, {}};
    write_file(path, hypcsp::write_instance(file));
    res = run("solve --in " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.out == "UNSAT\n");
    CHECK(run("count --in " + path).out == "0\n");
    CHECK(run("sample --in " + path + " --seed 1").exit_code == 3);

    // a satisfiable clue produces a verifiable witness
    file.board = hypcsp::BoardSection{{{0, 3}}, {}};
    write_file(path, hypcsp::write_instance(file));
    res = run("solve --in " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.out.substr(0, 4) == "SAT\n");
    CHECK(res.out.find("\"coloring\"") != std::string::npos);
}

TEST_CASE("sample is deterministic per seed") {
    hypcsp::InstanceFile file;
    file.graph = hypcsp::generate_tiling({7, 3, 1, {}});
    file.board = hypcsp::BoardSection{{{0, 2}}, {}};
    std::string path = temp_file("sample.json");
    write_file(path, hypcsp::write_instance(file));
    auto a = run("sample --in " + path + " --seed 7");
    auto b = run("sample --in " + path + " --seed 7");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto c = run("sample --in " + path + " --seed 8");
    CHECK(c.exit_code == 0);
}

TEST_CASE("deduce prints forced statuses") {
    hypcsp::InstanceFile file;
    file.graph = hypcsp::generate_tiling({7, 3, 1, {}});
    file.board = hypcsp::BoardSection{{{0, 0}}, {}};
    std::string path = temp_file("deduce.json");
    write_file(path, hypcsp::write_instance(file));
    auto res = run("deduce --in " + path);
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("count 1\n") == 0);
    for (int v = 1; v <= 7; ++v)
        CHECK(res.out.find("cell " + std::to_string(v) + " FORCED_CLEAR") != std::string::npos);
}

TEST_CASE("widths prints one line per ring count") {
    auto res = run("widths --p 7 --q 3 --max-rings 2");
    CHECK(res.exit_code == 0);
    CHECK(res.out.find("1 0\n") == 0);
    CHECK(std::count(res.out.begin(), res.out.end(), '\n') == 3);
}

TEST_CASE("bad inputs exit with code 2") {
    CHECK(run("count --in /nonexistent.json").exit_code == 2);
    std::string path = temp_file("garbage.json");
    write_file(path, "{{{");
    CHECK(run("validate --in " + path).exit_code == 2);
    // graph-only instance cannot be solved
    hypcsp::InstanceFile file;
    file.graph = hypcsp::generate_tiling({7, 3, 1, {}});
    write_file(path, hypcsp::write_instance(file));
    CHECK(run("solve --in " + path).exit_code == 2);
}
