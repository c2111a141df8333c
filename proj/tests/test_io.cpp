#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "pnmds/generators.hpp"
#include "pnmds/io.hpp"

using namespace pnmds;

TEST_CASE("text format round-trips with edge order intact") {
    std::vector<PortGraph> gs = {
        PortGraph::from_edge_list(1, {}),
        gen_grid(3, 4),
        gen_random_triangulation(20, 5, 0.8),
        gen_shared_hub(4),
    };
    for (const auto& g : gs) {
        std::ostringstream os;
        write_graph_text(os, g);
        std::istringstream is(os.str());
        REQUIRE(read_graph_text(is) == g);
    }
}

TEST_CASE("text format accepts comments and blank lines") {
    std::istringstream is("n 3\ne 0 1\n\n# trailing note\ne 1 2\n# end\n");
    auto g = read_graph_text(is);
    REQUIRE(g.node_count() == 3);
    REQUIRE(g.edge_count() == 2);
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream is(text);
        try {
            read_graph_text(is);
        } catch (const parse_error& e) {
            return e.line;
        }
        return 0;
    };
    REQUIRE(line_of("m 3\n") == 1);                    // unknown record
    REQUIRE(line_of("n 3\ne 0\n") == 2);               // short edge line
    REQUIRE(line_of("e 0 1\nn 3\n") == 1);             // edge before n
    REQUIRE(line_of("n 3\ne 0 1\ne 0 3\n") == 3);      // endpoint out of range
    REQUIRE(line_of("n 3\ne 0 1\n# x\ne 1 0\n") == 4); // duplicate, after comment
    REQUIRE(line_of("") == 1);                         // missing n line
}

TEST_CASE("json format round-trips and is auto-detected") {
    auto g = gen_caterpillar(3, 2);
    auto j = graph_to_json(g);
    REQUIRE(j["n"] == 9);
    REQUIRE(graph_from_json(j) == g);

    std::istringstream is("  " + j.dump());
    REQUIRE(read_graph_auto(is) == g);

    std::ostringstream os;
    write_graph_text(os, g);
    std::istringstream is2(os.str());
    REQUIRE(read_graph_auto(is2) == g);
}

TEST_CASE("result objects serialize with sorted node lists") {
    auto g = gen_grid(2, 4);
    auto res = run_distributed(g);
    auto j = result_to_json(res);
    REQUIRE(j["rounds"] == kMdsRounds);
    REQUIRE(j.contains("D"));
    REQUIRE(j.contains("D1"));
    REQUIRE(j.contains("D2"));
    REQUIRE(j.contains("D3"));
    REQUIRE(j.contains("max_message_bits"));
    auto d = j["D"].get<std::vector<node_t>>();
    REQUIRE(std::is_sorted(d.begin(), d.end()));

    auto back = result_from_json(j);
    REQUIRE(back.same_sets(res));
    REQUIRE(back.stats.rounds_executed == res.stats.rounds_executed);
}

TEST_CASE("oracle result serializes the wire schema exactly") {
    OracleResult o;
    o.size = 2;
    o.witness = {1, 4};
    o.optimal = true;
    o.nodes_explored = 17;
    auto j = oracle_to_json(o);
    REQUIRE(j.size() == 3);  // size, witness, optimal
    REQUIRE(j["size"] == 2);
    REQUIRE(j["witness"] == std::vector<node_t>{1, 4});
    REQUIRE(j["optimal"] == true);
}
