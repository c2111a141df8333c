#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <numeric>

#include "pnmds/generators.hpp"
#include "pnmds/mds_protocol.hpp"
#include "pnmds/oracle.hpp"

using namespace pnmds;

namespace {

// Independent second oracle: exhaustive subset enumeration, usable up to
// n = 16. Deliberately shares nothing with the branch-and-bound path.
std::size_t gamma_by_enumeration(const PortGraph& g) {
    const std::size_t n = g.node_count();
    REQUIRE(n <= 16);
    std::vector<std::uint32_t> cover(n, 0);
    for (node_t v = 0; v < n; ++v) {
        cover[v] = 1u << v;
        for (const auto& e : g.ports(v)) cover[v] |= 1u << e.neighbor;
    }
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::size_t best = n;
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
        if (static_cast<std::size_t>(std::popcount(subset)) >= best) continue;
        std::uint32_t covered = 0;
        for (node_t v = 0; v < n; ++v)
            if (subset & (1u << v)) covered |= cover[v];
        if (covered == full) best = std::popcount(subset);
    }
    return best;
}

std::vector<PortGraph> small_corpus() {
    std::vector<PortGraph> gs;
    gs.push_back(PortGraph::from_edge_list(1, {}));
    gs.push_back(PortGraph::from_edge_list(3, {}));
    for (std::size_t n : {3, 4, 5, 6, 7, 8}) gs.push_back(gen_cycle(n));
    gs.push_back(gen_grid(3, 3));
    gs.push_back(gen_grid(2, 6));
    gs.push_back(gen_star(7));
    gs.push_back(gen_caterpillar(3, 2));
    gs.push_back(gen_shared_hub(5));
    for (std::uint64_t seed : {1, 2, 3}) {
        gs.push_back(gen_random_triangulation(12, seed));
        gs.push_back(gen_random_triangulation(14, seed, 0.55));
    }
    return gs;
}

}  // namespace

TEST_CASE("is_dominating") {
    auto c6 = gen_cycle(6);
    std::vector<node_t> all(6);
    std::iota(all.begin(), all.end(), 0);
    REQUIRE(is_dominating(c6, all).ok);
    REQUIRE(is_dominating(gen_star(5), std::vector<node_t>{0}).ok);
    auto bad = is_dominating(c6, std::vector<node_t>{0});
    REQUIRE_FALSE(bad.ok);
    REQUIRE(bad.witness == 3);
}

TEST_CASE("exact solver frozen values") {
    SECTION("edgeless graphs need every vertex") {
        auto g = PortGraph::from_edge_list(5, {});
        auto res = exact_mds(g);
        REQUIRE(res.optimal);
        REQUIRE(res.size == 5);
    }
    SECTION("six-cycle") {
        auto res = exact_mds(gen_cycle(6));
        REQUIRE(res.optimal);
        REQUIRE(res.size == 2);
    }
    SECTION("3x3 grid") {
        auto res = exact_mds(gen_grid(3, 3));
        REQUIRE(res.optimal);
        REQUIRE(res.size == 3);
    }
}

TEST_CASE("exact solver agrees with exhaustive enumeration") {
    for (const auto& g : small_corpus()) {
        auto res = exact_mds(g);
        INFO("n=" << g.node_count() << " m=" << g.edge_count());
        REQUIRE(res.optimal);
        REQUIRE(res.size == gamma_by_enumeration(g));
        REQUIRE(is_dominating(g, res.witness).ok);
        REQUIRE(res.witness.size() == res.size);
    }
}

TEST_CASE("cycle domination numbers follow ceil(n/3)") {
    for (std::size_t n = 3; n <= 15; ++n) {
        auto g = gen_cycle(n);
        const std::size_t expected = (n + 2) / 3;
        REQUIRE(gamma_by_enumeration(g) == expected);
        auto res = exact_mds(g);
        REQUIRE(res.optimal);
        REQUIRE(res.size == expected);
    }
}

TEST_CASE("greedy baseline") {
    REQUIRE(greedy_mds(gen_star(5)) == std::vector<node_t>{0});
    REQUIRE(greedy_mds(PortGraph::from_edge_list(3, {})) == std::vector<node_t>{0, 1, 2});
    auto c6 = gen_cycle(6);
    auto greedy = greedy_mds(c6);
    REQUIRE(greedy.size() >= 2);
    REQUIRE(greedy.size() <= 3);
    REQUIRE(is_dominating(c6, greedy).ok);
}

TEST_CASE("exact size never exceeds greedy size") {
    for (const auto& g : small_corpus()) {
        auto res = exact_mds(g);
        REQUIRE(res.optimal);
        REQUIRE(res.size <= greedy_mds(g).size());
    }
}

TEST_CASE("budget exhaustion still yields a dominating incumbent") {
    auto g = gen_random_triangulation(60, 5);
    auto res = exact_mds(g, 10);
    REQUIRE_FALSE(res.optimal);
    REQUIRE(is_dominating(g, res.witness).ok);
    REQUIRE(res.nodes_explored >= 10);
}

TEST_CASE("ratio arithmetic") {
    auto mk = [](std::size_t d) {
        MdsResult r;
        r.d.resize(d);
        return r;
    };
    auto oracle = [](std::size_t size, bool optimal) {
        OracleResult o;
        o.size = size;
        o.optimal = optimal;
        return o;
    };
    REQUIRE(ratio(mk(6), oracle(2, true)) == Ratio{3, 1});
    REQUIRE(ratio(mk(1), oracle(1, true)) == Ratio{1, 1});
    REQUIRE(ratio(mk(2), oracle(1, true)) == Ratio{2, 1});
    REQUIRE(ratio(mk(5), oracle(3, true)) == Ratio{5, 3});
    REQUIRE(ratio(mk(5), oracle(3, true)).at_most(2));
    REQUIRE_FALSE(ratio(mk(5), oracle(3, true)).at_most(1));
    REQUIRE_THROWS_AS(ratio(mk(2), oracle(1, false)), std::invalid_argument);
}
