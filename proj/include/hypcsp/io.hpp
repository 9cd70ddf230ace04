#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypcsp/csp.hpp"
#include "hypcsp/graph.hpp"
#include "hypcsp/minesweeper.hpp"

// Instance interchange format: one JSON document holding the embedded
// graph plus at most one of an HLCSP section or a Minesweeper board.
// Serialization is canonical (sorted keys, 12-significant-digit floats)
// so write -> read -> write is byte-identical.

namespace hypcsp {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct HlcspSection {
    std::vector<std::string> colors;
    std::vector<VertexConstraint> constraints;
};

struct BoardSection {
    std::vector<std::pair<int, int>> clues;          // (cell, n)
    std::vector<std::pair<int, Flag>> flags;         // (cell, state)
};

struct InstanceFile {
    int format_version = 1;
    HypGraph graph;
    std::optional<HlcspSection> hlcsp;
    std::optional<BoardSection> board;

    HLCSPInstance to_hlcsp() const {
        if (!hlcsp) throw ParseError("instance file has no hlcsp section");
        HLCSPInstance inst;
        inst.graph = graph;
        inst.colors.names = hlcsp->colors;
        inst.constraints = hlcsp->constraints;
        inst.check();
        return inst;
    }

    Board to_board() const {
        if (!board) throw ParseError("instance file has no board section");
        Board b;
        b.graph = graph;
        for (auto& [cell, n] : board->clues) b.clues[cell] = n;
        for (auto& [cell, f] : board->flags) b.flags[cell] = f;
        b.check();
        return b;
    }
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace detail

inline std::string write_instance(const InstanceFile& file) {
    std::string out = "{";
    if (file.board) {
        out += "\"board\":{\"clues\":[";
        bool first = true;
        for (auto& [cell, n] : file.board->clues) {
            if (!first) out += ",";
            first = false;
            out += "{\"cell\":" + std::to_string(cell) + ",\"n\":" + std::to_string(n) + "}";
        }
        out += "],\"flags\":[";
        first = true;
        for (auto& [cell, f] : file.board->flags) {
            if (!first) out += ",";
            first = false;
            out += "{\"cell\":" + std::to_string(cell) + ",\"state\":\"" +
                   (f == Flag::kKnownMine ? "MINE" : "CLEAR") + "\"}";
        }
        out += "]},";
    }
    out += "\"format_version\":" + std::to_string(file.format_version) + ",";
    out += "\"graph\":{\"edges\":[";
    bool first = true;
    for (auto& [u, v] : file.graph.edges) {
        if (!first) out += ",";
        first = false;
        out += "[" + std::to_string(u) + "," + std::to_string(v) + "]";
    }
    out += "],\"params\":{\"d\":" + detail::fmt_double(file.graph.d) +
           ",\"r\":" + detail::fmt_double(file.graph.r) + "},\"vertices\":[";
    first = true;
    for (int v = 0; v < file.graph.num_vertices(); ++v) {
        if (!first) out += ",";
        first = false;
        const HypPoint& p = file.graph.positions[v];
        out += "{\"id\":" + std::to_string(v) + ",\"x\":" + detail::fmt_double(p.x) +
               ",\"y\":" + detail::fmt_double(p.y) + ",\"z\":" + detail::fmt_double(p.z) + "}";
    }
    out += "]}";
    if (file.hlcsp) {
        out += ",\"hlcsp\":{\"colors\":[";
        first = true;
        for (const auto& name : file.hlcsp->colors) {
            if (!first) out += ",";
            first = false;
            out += "\"" + name + "\"";
        }
        out += "],\"constraints\":[";
        first = true;
        for (const auto& vc : file.hlcsp->constraints) {
            if (!first) out += ",";
            first = false;
            out += "{\"allowed\":[";
            bool ft = true;
            for (const auto& tuple : vc.allowed) {
                if (!ft) out += ",";
                ft = false;
                out += "[";
                for (size_t i = 0; i < tuple.size(); ++i) {
                    if (i) out += ",";
                    out += std::to_string(static_cast<int>(tuple[i]));
                }
                out += "]";
            }
            out += "],\"neighborhood\":[";
            for (size_t i = 0; i < vc.neighbors.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(vc.neighbors[i]);
            }
            out += "],\"v\":" + std::to_string(vc.v) + "}";
        }
        out += "]}";
    }
    out += "}\n";
    return out;
}

inline InstanceFile read_instance(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        InstanceFile file;
        file.format_version = j.at("format_version").get<int>();
        if (file.format_version != 1) throw ParseError("unsupported format_version");
        const auto& jg = j.at("graph");
        const auto& jverts = jg.at("vertices");
        file.graph.positions.resize(jverts.size());
        std::vector<char> seen(jverts.size(), 0);
        for (const auto& jv : jverts) {
            int id = jv.at("id").get<int>();
            if (id < 0 || id >= static_cast<int>(jverts.size()) || seen[id])
                throw ParseError("vertex ids must be unique and dense");
            seen[id] = 1;
            HypPoint p{jv.at("x").get<double>(), jv.at("y").get<double>(),
                       jv.at("z").get<double>()};
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
                throw ParseError("vertex coordinates must be finite");
            file.graph.positions[id] = p;
        }
        file.graph.d = jg.at("params").at("d").get<double>();
        file.graph.r = jg.at("params").at("r").get<double>();
        if (!std::isfinite(file.graph.d) || !std::isfinite(file.graph.r))
            throw ParseError("params must be finite");
        for (const auto& je : jg.at("edges")) {
            int u = je.at(0).get<int>(), v = je.at(1).get<int>();
            if (u < 0 || v < 0 || u >= file.graph.num_vertices() ||
                v >= file.graph.num_vertices() || u == v)
                throw ParseError("edge endpoints must resolve to distinct vertices");
            file.graph.add_edge(u, v);
        }
        file.graph.finalize_edges();

        if (j.contains("hlcsp")) {
            HlcspSection sec;
            for (const auto& jc : j.at("hlcsp").at("colors"))
                sec.colors.push_back(jc.get<std::string>());
            for (const auto& jc : j.at("hlcsp").at("constraints")) {
                VertexConstraint vc;
                vc.v = jc.at("v").get<int>();
                for (const auto& u : jc.at("neighborhood")) vc.neighbors.push_back(u.get<int>());
                for (const auto& jt : jc.at("allowed")) {
                    std::vector<uint8_t> tuple;
                    for (const auto& c : jt) {
                        int idx = c.get<int>();
                        if (idx < 0 || idx >= static_cast<int>(sec.colors.size()))
                            throw ParseError("color index out of range");
                        tuple.push_back(static_cast<uint8_t>(idx));
                    }
                    vc.allowed.push_back(std::move(tuple));
                }
                sec.constraints.push_back(std::move(vc));
            }
            file.hlcsp = std::move(sec);
        }
        if (j.contains("board")) {
            BoardSection sec;
            for (const auto& jc : j.at("board").at("clues"))
                sec.clues.emplace_back(jc.at("cell").get<int>(), jc.at("n").get<int>());
            if (j.at("board").contains("flags"))
                for (const auto& jf : j.at("board").at("flags")) {
                    std::string state = jf.at("state").get<std::string>();
                    if (state != "MINE" && state != "CLEAR")
                        throw ParseError("flag state must be MINE or CLEAR");
                    sec.flags.emplace_back(jf.at("cell").get<int>(),
                                           state == "MINE" ? Flag::kKnownMine : Flag::kKnownClear);
                }
            file.board = std::move(sec);
        }
        if (file.hlcsp && file.board)
            throw ParseError("instance may carry at most one of hlcsp/board");
        return file;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed instance: ") + e.what());
    }
}

// Canonical JSON for a solution coloring.
inline std::string write_coloring(const Coloring& c, const ColorSet& colors) {
    std::string out = "{\"coloring\":[";
    for (size_t v = 0; v < c.assignment.size(); ++v) {
        if (v) out += ",";
        out += "{\"color\":\"" + colors.names[c.assignment[v]] + "\",\"v\":" +
               std::to_string(v) + "}";
    }
    out += "]}\n";
    return out;
}

}  // namespace hypcsp
