// Command-line front end: generate tessellation instances, validate
// embeddings, and solve / count / sample / deduce constraint instances.
//
// Exit codes: 0 ok, 2 bad input, 3 unsatisfiable (sample), 4 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypcsp/csp.hpp"
#include "hypcsp/engine.hpp"
#include "hypcsp/io.hpp"
#include "hypcsp/minesweeper.hpp"
#include "hypcsp/tessellation.hpp"
#include "hypcsp/treedec.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hypcsp::ParseError("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw hypcsp::ParseError("cannot open output file: " + out_path);
        out << text;
    }
}

// Builds the HLCSP view of an instance file (boards are encoded first).
hypcsp::HLCSPInstance load_hlcsp(const hypcsp::InstanceFile& file) {
    if (file.board) return hypcsp::encode(file.to_board());
    return file.to_hlcsp();
}

struct Pipeline {
    hypcsp::HLCSPInstance hlcsp;
    hypcsp::HECSPInstance hecsp;
    hypcsp::DecodeMap decode_map;
    hypcsp::NiceDecomposition nice;
};

Pipeline prepare(const hypcsp::InstanceFile& file) {
    Pipeline p;
    p.hlcsp = load_hlcsp(file);
    auto [hecsp, dm] = hypcsp::reduce_to_hecsp(p.hlcsp);
    p.hecsp = std::move(hecsp);
    p.decode_map = std::move(dm);
    auto tree = hypcsp::build_decomposition(p.hlcsp.graph, hypcsp::decomposition_seeds());
    p.nice = hypcsp::to_nice(p.hlcsp.graph, tree);
    return p;
}

int run(int argc, char** argv) {
    CLI::App app{"local constraint satisfaction on hyperbolic graphs"};
    app.require_subcommand(1);

    int p = 7, q = 3, rings = 0, max_rings = 0;
    std::vector<int> removed;
    std::string in_path, out_path;
    uint64_t seed = 0;

    auto* gen = app.add_subcommand("gen", "generate a {p,q} tessellation instance");
    gen->add_option("--p", p, "polygon sides")->required();
    gen->add_option("--q", q, "polygons per corner")->required();
    gen->add_option("--rings", rings, "tile-BFS radius")->required();
    gen->add_option("--remove", removed, "tile ids to delete after generation");
    gen->add_option("--out", out_path, "output file (default stdout)");

    auto* validate = app.add_subcommand("validate", "check the embedding conditions");
    validate->add_option("--in", in_path, "instance file")->required();

    auto* solve = app.add_subcommand("solve", "decide satisfiability, print a witness");
    solve->add_option("--in", in_path, "instance file")->required();

    auto* count_cmd = app.add_subcommand("count", "print the exact solution count");
    count_cmd->add_option("--in", in_path, "instance file")->required();

    auto* sample_cmd = app.add_subcommand("sample", "sample a uniformly random solution");
    sample_cmd->add_option("--in", in_path, "instance file")->required();
    sample_cmd->add_option("--seed", seed, "PRNG seed")->required();
    sample_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto* deduce_cmd = app.add_subcommand("deduce", "per-cell forced/ambiguous statuses");
    deduce_cmd->add_option("--in", in_path, "board instance file")->required();

    auto* widths = app.add_subcommand("widths", "decomposition widths per ring count");
    widths->add_option("--p", p, "polygon sides")->required();
    widths->add_option("--q", q, "polygons per corner")->required();
    widths->add_option("--max-rings", max_rings, "largest ring count")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (gen->parsed()) {
        hypcsp::TilingSpec spec{p, q, rings, removed};
        hypcsp::InstanceFile file;
        file.graph = hypcsp::generate_tiling(spec);
        emit(hypcsp::write_instance(file), out_path);
        return 0;
    }

    if (validate->parsed()) {
        hypcsp::InstanceFile file = hypcsp::read_instance(slurp(in_path));
        hypcsp::ValidationReport report = hypcsp::validate_embedding(file.graph);
        if (report.pass()) {
            std::cout << "embedding: PASS\n";
        } else {
            std::cout << "embedding: FAIL (" << report.violations.size() << " violations)\n";
            for (const auto& v : report.violations) std::cout << v.message << "\n";
        }
        return 0;
    }

    if (solve->parsed()) {
        Pipeline pl = prepare(hypcsp::read_instance(slurp(in_path)));
        auto w = hypcsp::witness(pl.hecsp, pl.nice);
        if (!w) {
            std::cout << "UNSAT\n";
        } else {
            std::cout << "SAT\n";
            hypcsp::Coloring c = hypcsp::decode(pl.hecsp, *w, pl.decode_map);
            std::cout << hypcsp::write_coloring(c, pl.hlcsp.colors);
        }
        return 0;
    }

    if (count_cmd->parsed()) {
        Pipeline pl = prepare(hypcsp::read_instance(slurp(in_path)));
        std::cout << hypcsp::count(pl.hecsp, pl.nice).get_str() << "\n";
        return 0;
    }

    if (sample_cmd->parsed()) {
        Pipeline pl = prepare(hypcsp::read_instance(slurp(in_path)));
        hypcsp::Coloring sol = hypcsp::sample(pl.hecsp, pl.nice, seed);
        hypcsp::Coloring c = hypcsp::decode(pl.hecsp, sol, pl.decode_map);
        emit(hypcsp::write_coloring(c, pl.hlcsp.colors), out_path);
        return 0;
    }

    if (deduce_cmd->parsed()) {
        hypcsp::InstanceFile file = hypcsp::read_instance(slurp(in_path));
        hypcsp::Board b = file.to_board();
        hypcsp::DeductionResult res = hypcsp::deduce(b);
        std::cout << "count " << res.solution_count.get_str() << "\n";
        for (auto& [cell, status] : res.cells) {
            const char* name = status == hypcsp::CellStatus::kForcedMine    ? "FORCED_MINE"
                               : status == hypcsp::CellStatus::kForcedClear ? "FORCED_CLEAR"
                                                                            : "AMBIGUOUS";
            std::cout << "cell " << cell << " " << name << "\n";
        }
        return 0;
    }

    if (widths->parsed()) {
        std::vector<hypcsp::TilingSpec> specs;
        for (int rr = 0; rr <= max_rings; ++rr) specs.push_back({p, q, rr, {}});
        for (auto& [n, w] : hypcsp::width_profile(specs, hypcsp::decomposition_seeds()))
            std::cout << n << " " << w << "\n";
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const hypcsp::UnsatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hypcsp::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
