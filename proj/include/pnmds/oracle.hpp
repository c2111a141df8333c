#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "pnmds/mds_protocol.hpp"
#include "pnmds/port_graph.hpp"

namespace pnmds {

/// Domination check. Returns the farthest undominated vertex (ties to
/// the lowest index) when the set fails to dominate.
inline CoverCheck is_dominating(const PortGraph& g, std::span<const node_t> s) {
    return within_distance(g, s, 1);
}

struct OracleResult {
    std::size_t size = 0;
    std::vector<node_t> witness;
    bool optimal = false;  // search exhausted within budget
    std::uint64_t nodes_explored = 0;
};

/// Covers the most still-undominated vertices first; ties go to the
/// lowest index. Always returns a dominating set.
inline std::vector<node_t> greedy_mds(const PortGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<char> dom(n, 0);
    std::size_t undominated = n;
    std::vector<node_t> out;
    while (undominated > 0) {
        node_t best = 0;
        std::size_t best_gain = 0;
        for (node_t v = 0; v < n; ++v) {
            std::size_t gain = dom[v] ? 0 : 1;
            for (const auto& e : g.ports(v)) gain += dom[e.neighbor] ? 0 : 1;
            if (gain > best_gain) {
                best_gain = gain;
                best = v;
            }
        }
        out.push_back(best);
        if (!dom[best]) {
            dom[best] = 1;
            --undominated;
        }
        for (const auto& e : g.ports(best)) {
            if (!dom[e.neighbor]) {
                dom[e.neighbor] = 1;
                --undominated;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

/// Fixed-width bitset over n bits, sized at runtime.
class NodeMask {
public:
    explicit NodeMask(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void or_with(const NodeMask& o) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    }
    bool intersects(const NodeMask& o) const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & o.words_[w]) return true;
        return false;
    }
    std::size_t count_missing() const {  // bits not set, within [0, bits_)
        std::size_t set = 0;
        for (auto w : words_) set += static_cast<std::size_t>(std::popcount(w));
        return bits_ - set;
    }
    bool full() const { return count_missing() == 0; }
    std::size_t count_new_bits(const NodeMask& o) const {  // |o \ this|
        std::size_t c = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            c += static_cast<std::size_t>(std::popcount(o.words_[w] & ~words_[w]));
        return c;
    }

private:
    std::size_t bits_;
    std::vector<std::uint64_t> words_;
};

struct MdsSearch {
    const PortGraph& g;
    std::size_t n;
    std::vector<NodeMask> cover;  // closed neighborhood of each vertex
    std::uint64_t budget;
    std::uint64_t explored = 0;
    bool out_of_budget = false;
    std::vector<node_t> best;
    std::vector<node_t> chosen;

    MdsSearch(const PortGraph& graph, std::uint64_t node_budget)
        : g(graph), n(graph.node_count()), budget(node_budget) {
        cover.reserve(n);
        for (node_t v = 0; v < n; ++v) {
            NodeMask m(n);
            m.set(v);
            for (const auto& e : g.ports(v)) m.set(e.neighbor);
            cover.push_back(std::move(m));
        }
    }

    // Disjoint closed neighborhoods among undominated vertices, greedily
    // extracted: each needs its own dominator, so the count lower-bounds
    // the vertices still to be added.
    std::size_t lower_bound(const NodeMask& dominated) const {
        NodeMask used(n);
        std::size_t packed = 0;
        for (node_t v = 0; v < n; ++v) {
            if (dominated.test(v)) continue;
            if (used.intersects(cover[v])) continue;
            used.or_with(cover[v]);
            ++packed;
        }
        return packed;
    }

    void recurse(const NodeMask& dominated) {
        if (out_of_budget) return;
        if (++explored > budget) {
            out_of_budget = true;
            return;
        }
        if (dominated.full()) {
            if (chosen.size() < best.size()) best = chosen;
            return;
        }
        if (chosen.size() + lower_bound(dominated) >= best.size()) return;

        // Branch on the coverers of an undominated vertex of minimum
        // degree: fewest children. Deterministic ties by index.
        node_t pivot = 0;
        std::size_t pivot_deg = n + 1;
        for (node_t v = 0; v < n; ++v) {
            if (dominated.test(v)) continue;
            if (g.degree(v) < pivot_deg) {
                pivot_deg = g.degree(v);
                pivot = v;
            }
        }
        std::vector<node_t> branches;
        branches.push_back(pivot);
        for (const auto& e : g.ports(pivot)) branches.push_back(e.neighbor);
        std::sort(branches.begin(), branches.end(), [&](node_t a, node_t b) {
            const auto ga = dominated.count_new_bits(cover[a]);
            const auto gb = dominated.count_new_bits(cover[b]);
            return ga != gb ? ga > gb : a < b;
        });
        for (node_t w : branches) {
            chosen.push_back(w);
            NodeMask next = dominated;
            next.or_with(cover[w]);
            recurse(next);
            chosen.pop_back();
            if (out_of_budget) return;
        }
    }
};

}  // namespace detail

/// Exact minimum dominating set by branch and bound. Repeatedly picks an
/// undominated vertex and branches on which member of its closed
/// neighborhood joins the solution, pruning with the disjoint-
/// neighborhood bound against the incumbent (seeded by the greedy set).
/// `optimal` is true iff the search exhausted within node_budget; on
/// exhaustion the best incumbent found so far is returned.
inline OracleResult exact_mds(const PortGraph& g, std::uint64_t node_budget = 10'000'000) {
    OracleResult res;
    if (g.node_count() == 0) {
        res.optimal = true;
        return res;
    }
    detail::MdsSearch search(g, node_budget);
    search.best = greedy_mds(g);
    search.recurse(detail::NodeMask(g.node_count()));
    res.size = search.best.size();
    res.witness = search.best;
    std::sort(res.witness.begin(), res.witness.end());
    res.optimal = !search.out_of_budget;
    res.nodes_explored = search.explored;
    return res;
}

/// Exact rational, reduced. Nothing here ever needs more than |V| in
/// numerator or denominator.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Ratio of(std::uint64_t num, std::uint64_t den) {
        const auto g = std::gcd(num, den);
        return {num / g, den / g};
    }
    bool at_most(std::uint64_t bound) const { return num <= bound * den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Ratio&, const Ratio&) = default;
    friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
};

/// Guaranteed worst-case approximation factor of the protocol on planar
/// inputs; the bench and acceptance gates assert every observed ratio
/// stays at or below it.
inline constexpr std::uint64_t kRatioBound = 636;

/// |D| / |M| against a certified optimum. Refuses a non-optimal oracle
/// result: there is no ratio against an uncertified M.
inline Ratio ratio(const MdsResult& algo, const OracleResult& oracle) {
    if (!oracle.optimal)
        throw std::invalid_argument("ratio: oracle result is not certified optimal");
    if (oracle.size == 0) throw std::invalid_argument("ratio: |M| must be at least 1");
    return Ratio::of(algo.d.size(), oracle.size);
}

}  // namespace pnmds
