#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "pnmds/port_graph.hpp"

namespace pnmds {

/// Deterministic across platforms: mt19937_64 output is pinned by the
/// standard, and the bounded draws below avoid the library-defined
/// distributions on purpose.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Unbiased draw from [0, bound) by rejection.
    std::size_t below(std::size_t bound) {
        const std::uint64_t b = bound;
        const std::uint64_t threshold = (0 - b) % b;  // 2^64 mod b
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return static_cast<std::size_t>(r % b);
        }
    }

    bool bernoulli(double p) {
        // 53 uniform bits; strictly below 1.0, so p = 1 always passes.
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
    }

private:
    std::mt19937_64 gen_;
};

enum class Family : std::uint8_t { grid, cycle, star, caterpillar, shared_hub, triangulation };

inline constexpr std::array<Family, 6> kAllFamilies = {
    Family::grid,   Family::cycle,      Family::star,
    Family::caterpillar, Family::shared_hub, Family::triangulation};

inline std::string_view family_name(Family f) {
    switch (f) {
        case Family::grid: return "grid";
        case Family::cycle: return "cycle";
        case Family::star: return "star";
        case Family::caterpillar: return "caterpillar";
        case Family::shared_hub: return "shared_hub";
        case Family::triangulation: return "triangulation";
    }
    return "?";
}

inline Family family_from_name(std::string_view name) {
    for (Family f : kAllFamilies)
        if (family_name(f) == name) return f;
    throw std::invalid_argument("unknown family: " + std::string(name));
}

/// rows×cols grid; |E| = rows(cols−1) + cols(rows−1). Node (r,c) is
/// r*cols + c; each cell contributes its right edge then its down edge.
inline PortGraph gen_grid(std::size_t rows, std::size_t cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("gen_grid: dimensions must be >= 1");
    std::vector<edge_t> edges;
    auto at = [cols](std::size_t r, std::size_t c) { return static_cast<node_t>(r * cols + c); };
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(at(r, c), at(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(at(r, c), at(r + 1, c));
        }
    }
    return PortGraph::from_edge_list(rows * cols, edges);
}

inline PortGraph gen_cycle(std::size_t n) {
    if (n < 3) throw std::invalid_argument("gen_cycle: n must be >= 3");
    std::vector<edge_t> edges;
    for (std::size_t i = 0; i + 1 < n; ++i)
        edges.emplace_back(static_cast<node_t>(i), static_cast<node_t>(i + 1));
    edges.emplace_back(static_cast<node_t>(n - 1), 0);
    return PortGraph::from_edge_list(n, edges);
}

/// K₁,ₖ with the center at index 0.
inline PortGraph gen_star(std::size_t k) {
    std::vector<edge_t> edges;
    for (std::size_t i = 1; i <= k; ++i) edges.emplace_back(0, static_cast<node_t>(i));
    return PortGraph::from_edge_list(k + 1, edges);
}

/// Path of `spine` hubs, each carrying `leaves_per` pendant leaves.
/// γ = spine whenever leaves_per ≥ 1.
inline PortGraph gen_caterpillar(std::size_t spine, std::size_t leaves_per) {
    if (spine < 1) throw std::invalid_argument("gen_caterpillar: spine must be >= 1");
    std::vector<edge_t> edges;
    for (std::size_t i = 0; i + 1 < spine; ++i)
        edges.emplace_back(static_cast<node_t>(i), static_cast<node_t>(i + 1));
    for (std::size_t i = 0; i < spine; ++i)
        for (std::size_t j = 0; j < leaves_per; ++j)
            edges.emplace_back(static_cast<node_t>(i),
                               static_cast<node_t>(spine + i * leaves_per + j));
    return PortGraph::from_edge_list(spine * (1 + leaves_per), edges);
}

/// Planar K₂,ₖ: two non-adjacent hubs sharing k clients — the
/// big-common-neighborhood regime the two-round selection is built for.
inline PortGraph gen_shared_hub(std::size_t k) {
    if (k < 1) throw std::invalid_argument("gen_shared_hub: k must be >= 1");
    std::vector<edge_t> edges;
    for (std::size_t c = 2; c < k + 2; ++c) {
        edges.emplace_back(0, static_cast<node_t>(c));
        edges.emplace_back(1, static_cast<node_t>(c));
    }
    return PortGraph::from_edge_list(k + 2, edges);
}

namespace detail {

inline std::vector<edge_t> subsample_edges(const std::vector<edge_t>& edges, Rng& rng,
                                           double keep_prob) {
    std::vector<edge_t> kept;
    kept.reserve(edges.size());
    for (const auto& e : edges)
        if (rng.bernoulli(keep_prob)) kept.push_back(e);
    return kept;
}

inline void check_keep_prob(double p) {
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("edge_keep_prob must be in (0, 1]");
}

}  // namespace detail

/// Random Apollonian construction: grow a triangulation by inserting
/// each new vertex into a uniformly chosen triangular face and wiring it
/// to the three corners — planar and maximal (|E| = 3n−6) by
/// construction — then keep each edge independently with probability
/// edge_keep_prob. Isolated vertices are legal and kept. Deterministic
/// given the seed.
inline PortGraph gen_random_triangulation(std::size_t n, std::uint64_t seed,
                                          double edge_keep_prob = 1.0) {
    if (n < 3) throw std::invalid_argument("gen_random_triangulation: n must be >= 3");
    detail::check_keep_prob(edge_keep_prob);
    Rng rng(seed);
    std::vector<edge_t> edges = {{0, 1}, {1, 2}, {2, 0}};
    std::vector<std::array<node_t, 3>> faces = {{0, 1, 2}};
    for (node_t v = 3; v < n; ++v) {
        const std::size_t f = rng.below(faces.size());
        const auto [a, b, c] = faces[f];
        edges.emplace_back(v, a);
        edges.emplace_back(v, b);
        edges.emplace_back(v, c);
        faces[f] = {a, b, v};
        faces.push_back({b, c, v});
        faces.push_back({c, a, v});
    }
    if (edge_keep_prob < 1.0) edges = detail::subsample_edges(edges, rng, edge_keep_prob);
    return PortGraph::from_edge_list(n, edges);
}

/// One generator instance: family plus its parameters, a seed, and an
/// optional edge-subsampling probability.
struct FamilySpec {
    Family family = Family::grid;
    std::size_t rows = 1, cols = 1;  // grid
    std::size_t n = 3;               // cycle, triangulation
    std::size_t k = 1;               // star, shared_hub
    std::size_t spine = 1, leaves = 0;
    std::uint64_t seed = 1;
    double edge_keep_prob = 1.0;

    std::string parameters() const {
        std::string out;
        switch (family) {
            case Family::grid:
                out = "rows=" + std::to_string(rows) + ";cols=" + std::to_string(cols);
                break;
            case Family::cycle: out = "n=" + std::to_string(n); break;
            case Family::star: out = "k=" + std::to_string(k); break;
            case Family::caterpillar:
                out = "spine=" + std::to_string(spine) + ";leaves=" + std::to_string(leaves);
                break;
            case Family::shared_hub: out = "k=" + std::to_string(k); break;
            case Family::triangulation: out = "n=" + std::to_string(n); break;
        }
        if (edge_keep_prob < 1.0) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%g", edge_keep_prob);
            out += ";keep=";
            out += buf;
        }
        return out;
    }
};

/// Builds the graph for a spec. Subsampling applies to every family
/// (a subgraph of a planar graph is planar); the triangulation folds it
/// into its own seeded stream.
inline PortGraph instantiate(const FamilySpec& spec) {
    detail::check_keep_prob(spec.edge_keep_prob);
    if (spec.family == Family::triangulation)
        return gen_random_triangulation(spec.n, spec.seed, spec.edge_keep_prob);
    PortGraph g;
    switch (spec.family) {
        case Family::grid: g = gen_grid(spec.rows, spec.cols); break;
        case Family::cycle: g = gen_cycle(spec.n); break;
        case Family::star: g = gen_star(spec.k); break;
        case Family::caterpillar: g = gen_caterpillar(spec.spine, spec.leaves); break;
        case Family::shared_hub: g = gen_shared_hub(spec.k); break;
        case Family::triangulation: break;  // handled above
    }
    if (spec.edge_keep_prob < 1.0) {
        Rng rng(spec.seed);
        auto kept = detail::subsample_edges(g.edges(), rng, spec.edge_keep_prob);
        g = PortGraph::from_edge_list(g.node_count(), kept);
    }
    return g;
}

}  // namespace pnmds
