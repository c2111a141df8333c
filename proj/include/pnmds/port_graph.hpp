#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pnmds {

using node_t = std::uint32_t;
using port_t = std::uint32_t;  // 1-based, 1..deg(v)
using edge_t = std::pair<node_t, node_t>;

/// Construction failure (self-loop, duplicate, endpoint out of range),
/// carrying the index of the offending edge in the input list.
class graph_error : public std::runtime_error {
public:
    graph_error(std::string msg, std::size_t edge_index)
        : std::runtime_error(std::move(msg)), edge_index(edge_index) {}
    std::size_t edge_index;
};

struct PortRef {
    node_t node;
    port_t port;
    friend bool operator==(const PortRef&, const PortRef&) = default;
};

/// What a node sees through one of its ports: the neighbor on the other
/// end and the port number under which the neighbor sees this node.
struct PortEntry {
    node_t neighbor;
    port_t reciprocal;
    friend bool operator==(const PortEntry&, const PortEntry&) = default;
};

/// Undirected simple graph in which every node privately numbers its
/// incident edges 1..deg(v). Node indices exist for the harness and file
/// formats only; protocols never see them. Immutable after construction,
/// safe for concurrent reads.
class PortGraph {
public:
    PortGraph() = default;

    /// Ports are assigned deterministically from the input order: the
    /// first edge incident to v becomes port 1 of v, and so on. This
    /// makes every experiment reproducible from the edge list alone.
    static PortGraph from_edge_list(std::size_t n, std::span<const edge_t> edges) {
        PortGraph g;
        g.adj_.resize(n);
        g.edges_.assign(edges.begin(), edges.end());
        std::vector<std::vector<node_t>> seen(n);  // dedup, sorted small lists
        for (std::size_t i = 0; i < edges.size(); ++i) {
            auto [u, v] = edges[i];
            if (u >= n || v >= n)
                throw graph_error("edge " + std::to_string(i) + ": endpoint out of range", i);
            if (u == v)
                throw graph_error("edge " + std::to_string(i) + ": self-loop", i);
            node_t lo = std::min(u, v), hi = std::max(u, v);
            auto& row = seen[lo];
            auto it = std::lower_bound(row.begin(), row.end(), hi);
            if (it != row.end() && *it == hi)
                throw graph_error("edge " + std::to_string(i) + ": duplicate edge", i);
            row.insert(it, hi);
            auto pu = static_cast<port_t>(g.adj_[u].size() + 1);
            auto pv = static_cast<port_t>(g.adj_[v].size() + 1);
            g.adj_[u].push_back({v, pv});
            g.adj_[v].push_back({u, pu});
        }
        return g;
    }

    static PortGraph from_edge_list(std::size_t n, std::initializer_list<edge_t> edges) {
        return from_edge_list(n, std::span<const edge_t>(edges.begin(), edges.size()));
    }

    std::size_t node_count() const noexcept { return adj_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    /// Edge list in port-assignment order (the construction input).
    const std::vector<edge_t>& edges() const noexcept { return edges_; }

    std::size_t degree(node_t v) const { return adj_.at(v).size(); }

    std::span<const PortEntry> ports(node_t v) const {
        const auto& row = adj_.at(v);
        return {row.data(), row.size()};
    }

    const PortEntry& port(node_t v, port_t p) const {
        const auto& row = adj_.at(v);
        if (p < 1 || p > row.size())
            throw std::out_of_range("port " + std::to_string(p) + " out of range for node " +
                                    std::to_string(v));
        return row[p - 1];
    }

    /// The other end of a port: involutive, endpoint(endpoint(r)) == r.
    PortRef endpoint(PortRef r) const {
        const auto& e = port(r.node, r.port);
        return {e.neighbor, e.reciprocal};
    }

    /// N⁺_v = {v} ∪ {u : uv ∈ E}, sorted ascending. Always contains v.
    std::vector<node_t> closed_neighborhood(node_t v) const {
        std::vector<node_t> out;
        out.reserve(degree(v) + 1);
        out.push_back(v);
        for (const auto& e : adj_[v]) out.push_back(e.neighbor);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Renames nodes by a permutation while keeping every node's private
    /// port order: port p of perm(v) points to perm(u) iff port p of v
    /// pointed to u. Rebuilding from the permuted edge list preserves
    /// exactly that, since per-node incidence order is unchanged.
    PortGraph relabel(std::span<const node_t> perm) const {
        const std::size_t n = node_count();
        if (perm.size() != n) throw std::invalid_argument("relabel: permutation size mismatch");
        std::vector<bool> hit(n, false);
        for (node_t p : perm) {
            if (p >= n || hit[p]) throw std::invalid_argument("relabel: not a permutation");
            hit[p] = true;
        }
        std::vector<edge_t> mapped;
        mapped.reserve(edges_.size());
        for (auto [u, v] : edges_) mapped.emplace_back(perm[u], perm[v]);
        return from_edge_list(n, mapped);
    }

    friend bool operator==(const PortGraph&, const PortGraph&) = default;

private:
    std::vector<std::vector<PortEntry>> adj_;
    std::vector<edge_t> edges_;
};

/// Exhaustive port-bijection check: port p of v maps to (u,q) iff port q
/// of u maps back to (v,p), and ports are exactly 1..deg(v).
inline bool has_consistent_ports(const PortGraph& g) {
    for (node_t v = 0; v < g.node_count(); ++v) {
        const auto row = g.ports(v);
        for (port_t p = 1; p <= row.size(); ++p) {
            const auto& e = row[p - 1];
            if (e.neighbor >= g.node_count()) return false;
            if (e.reciprocal < 1 || e.reciprocal > g.degree(e.neighbor)) return false;
            const auto& back = g.port(e.neighbor, e.reciprocal);
            if (back.neighbor != v || back.reciprocal != p) return false;
        }
    }
    return true;
}

struct PlanarityBound {
    bool pass;
    std::size_t excess;  // edges above the Euler bound when failing
};

/// Advisory Euler bound: |E| ≤ 3n−6 for n ≥ 3 (|E| ≤ n−1 below). A pass
/// does not certify planarity; a failure certifies non-planarity.
inline PlanarityBound planarity_bound_check(const PortGraph& g) {
    const std::size_t n = g.node_count();
    const std::size_t m = g.edge_count();
    const std::size_t bound = n >= 3 ? 3 * n - 6 : (n == 0 ? 0 : n - 1);
    if (m <= bound) return {true, 0};
    return {false, m - bound};
}

struct CoverCheck {
    bool ok;
    node_t witness;  // meaningful only when !ok
};

/// Is every vertex within `radius` hops of S? When not, the witness is
/// the farthest uncovered vertex (ties broken toward the lowest index),
/// i.e. the worst violator.
inline CoverCheck within_distance(const PortGraph& g, std::span<const node_t> s,
                                  std::size_t radius) {
    const std::size_t n = g.node_count();
    constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(n, kUnreached);
    std::queue<node_t> frontier;
    for (node_t v : s) {
        if (v >= n) throw std::invalid_argument("within_distance: node out of range");
        if (dist[v] == kUnreached) {
            dist[v] = 0;
            frontier.push(v);
        }
    }
    while (!frontier.empty()) {
        node_t v = frontier.front();
        frontier.pop();
        for (const auto& e : g.ports(v)) {
            if (dist[e.neighbor] == kUnreached) {
                dist[e.neighbor] = dist[v] + 1;
                frontier.push(e.neighbor);
            }
        }
    }
    CoverCheck res{true, 0};
    std::size_t worst = radius;
    for (node_t v = 0; v < n; ++v) {
        if (dist[v] > worst) {
            worst = dist[v];
            res = {false, v};
        }
    }
    return res;
}

}  // namespace pnmds
