#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pnmds/mds_protocol.hpp"
#include "pnmds/oracle.hpp"
#include "pnmds/port_graph.hpp"

namespace pnmds {

/// Malformed input file; `line` is 1-based.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, std::size_t line)
        : std::runtime_error("line " + std::to_string(line) + ": " + std::move(msg)),
          line(line) {}
    std::size_t line;
};

// Graph text format, line oriented:
//   n <count>
//   e <u> <v>        one line per edge, in port-assignment order
//   # comment
inline void write_graph_text(std::ostream& os, const PortGraph& g) {
    os << "n " << g.node_count() << "\n";
    for (auto [u, v] : g.edges()) os << "e " << u << " " << v << "\n";
}

inline PortGraph read_graph_text(std::istream& is) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t n = 0;
    bool have_n = false;
    std::vector<edge_t> edges;
    std::vector<std::size_t> edge_lines;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;  // blank line
        if (kind[0] == '#') continue;
        if (kind == "n") {
            if (have_n) throw parse_error("repeated n line", lineno);
            if (!(ls >> n)) throw parse_error("expected node count after 'n'", lineno);
            have_n = true;
        } else if (kind == "e") {
            if (!have_n) throw parse_error("edge before n line", lineno);
            long long u = -1, v = -1;
            if (!(ls >> u >> v) || u < 0 || v < 0)
                throw parse_error("expected 'e <u> <v>'", lineno);
            edges.emplace_back(static_cast<node_t>(u), static_cast<node_t>(v));
            edge_lines.push_back(lineno);
        } else {
            throw parse_error("unknown record '" + kind + "'", lineno);
        }
    }
    if (!have_n) throw parse_error("missing 'n <count>' line", lineno == 0 ? 1 : lineno);
    try {
        return PortGraph::from_edge_list(n, edges);
    } catch (const graph_error& e) {
        throw parse_error(e.what(), edge_lines.at(e.edge_index));
    }
}

// Structured-object equivalent: {"n": count, "edges": [[u, v], ...]}.
inline nlohmann::json graph_to_json(const PortGraph& g) {
    nlohmann::json j;
    j["n"] = g.node_count();
    auto edges = nlohmann::json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    return j;
}

inline PortGraph graph_from_json(const nlohmann::json& j) {
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<edge_t> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("edges entries must be two-element lists");
        edges.emplace_back(e[0].get<node_t>(), e[1].get<node_t>());
    }
    return PortGraph::from_edge_list(n, edges);
}

/// Accepts either format; a leading '{' selects the structured form.
inline PortGraph read_graph_auto(std::istream& is) {
    is >> std::ws;
    if (is.peek() == '{') {
        nlohmann::json j;
        is >> j;
        return graph_from_json(j);
    }
    return read_graph_text(is);
}

inline PortGraph load_graph(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph_auto(f);
}

inline void save_graph(const std::string& path, const PortGraph& g) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        f << graph_to_json(g).dump() << "\n";
    else
        write_graph_text(f, g);
    if (!f.good()) throw std::runtime_error("write failed: " + path);
}

inline nlohmann::json result_to_json(const MdsResult& r) {
    nlohmann::json j;
    j["D"] = r.d;
    j["D1"] = r.d1;
    j["D2"] = r.d2;
    j["D3"] = r.d3;
    j["rounds"] = r.stats.rounds_executed;
    j["max_message_bits"] = r.stats.max_message_bits;
    return j;
}

inline MdsResult result_from_json(const nlohmann::json& j) {
    MdsResult r;
    r.d = j.at("D").get<std::vector<node_t>>();
    r.d1 = j.at("D1").get<std::vector<node_t>>();
    r.d2 = j.at("D2").get<std::vector<node_t>>();
    r.d3 = j.at("D3").get<std::vector<node_t>>();
    r.stats.rounds_executed = j.at("rounds").get<std::size_t>();
    r.stats.max_message_bits = j.at("max_message_bits").get<std::size_t>();
    return r;
}

inline nlohmann::json oracle_to_json(const OracleResult& r) {
    nlohmann::json j;
    j["size"] = r.size;
    j["witness"] = r.witness;
    j["optimal"] = r.optimal;
    return j;
}

}  // namespace pnmds
