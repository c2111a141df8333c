#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "pnmds/message.hpp"
#include "pnmds/port_graph.hpp"

namespace pnmds {

using Inbox = std::span<const std::optional<Message>>;
using Outbox = std::span<std::optional<Message>>;

/// Contract for an anonymous node program. A node sees only its degree
/// (at init), the global round index, and port-indexed messages; it has
/// no identity and no knowledge of n. on_round consumes the messages
/// delivered at the start of round r (sent by neighbors in round r-1,
/// inbox and outbox are indexed port-1..deg) and must be a pure function
/// of its arguments. halted(s) means the node will send nothing further;
/// it may still be stepped once more to consume late deliveries.
template <class P>
concept node_program =
    requires(const P p, const typename P::State s, std::size_t r, Inbox in, Outbox out) {
        { p.init(std::size_t{}) } -> std::same_as<typename P::State>;
        { p.on_round(s, r, in, out) } -> std::same_as<typename P::State>;
        { p.halted(s) } -> std::convertible_to<bool>;
    };

struct RunStats {
    std::size_t rounds_executed = 0;
    std::size_t max_message_bits = 0;
    std::size_t total_messages = 0;
};

struct CongestVerdict {
    bool ok;
    std::size_t bits;  // offending size when !ok
};

/// CONGEST gate: every message fits in 4 + ⌈log₂(n+1)⌉ bits.
inline CongestVerdict assert_congest(const RunStats& stats, std::size_t n) {
    const std::size_t budget = kTagBits + payload_bits(n);
    if (stats.max_message_bits <= budget) return {true, stats.max_message_bits};
    return {false, stats.max_message_bits};
}

enum class RunStatus {
    completed,           // all nodes halted
    round_limit,         // max_rounds exhausted with live nodes
    protocol_violation,  // malformed message or send after halt
};

struct ProtocolViolation {
    std::string what;
    node_t node;
    std::size_t round;
};

struct TraceRecord {
    std::size_t round;
    node_t node;
    std::string digest;
    std::vector<std::pair<port_t, Message>> sent;
};
using TraceSink = std::function<void(const TraceRecord&)>;

struct ExecuteOptions {
    std::vector<node_t> eval_order;  // empty: index order; must be a permutation
    unsigned threads = 1;
    TraceSink trace;  // per stepped node per round; disabled when empty
};

template <class State>
struct ExecutionResult {
    std::vector<State> states;
    RunStats stats;
    RunStatus status = RunStatus::completed;
    std::optional<ProtocolViolation> violation;
};

namespace detail {

template <class P>
concept has_describe = requires(const P p, const typename P::State s) {
    { p.describe(s) } -> std::convertible_to<std::string>;
};

inline void parallel_over(std::size_t count, unsigned threads,
                          const std::function<void(std::size_t, std::size_t)>& run_range) {
    if (threads <= 1 || count < 2) {
        run_range(0, count);
        return;
    }
    const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        pool.emplace_back([&, lo, hi] { run_range(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// Runs an anonymous node program over the graph in synchronized rounds.
///
/// Each round, every live node (and every halted node with a pending
/// message) is stepped; the outboxes are then delivered so that a message
/// sent on port p of v in round r appears on the reciprocal port of the
/// endpoint in round r+1's inbox, and nowhere else. The loop stops once
/// all nodes report halted or max_rounds is hit. rounds_executed counts
/// send rounds: when the final round leaves messages in flight, one
/// receive-only settlement step (round index R+1) delivers them to their
/// halted recipients, which must not reply.
///
/// Node steps within a round are pure and order-independent; the result
/// is identical under any eval_order permutation and any thread count.
template <node_program P>
ExecutionResult<typename P::State> execute(const PortGraph& g, const P& prog,
                                           std::size_t max_rounds,
                                           const ExecuteOptions& opt = {}) {
    using State = typename P::State;
    const std::size_t n = g.node_count();
    if (max_rounds < 1) throw std::invalid_argument("execute: max_rounds must be >= 1");

    std::vector<node_t> order = opt.eval_order;
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
    } else {
        if (order.size() != n) throw std::invalid_argument("execute: eval_order size mismatch");
        std::vector<bool> hit(n, false);
        for (node_t v : order) {
            if (v >= n || hit[v]) throw std::invalid_argument("execute: eval_order not a permutation");
            hit[v] = true;
        }
    }

    ExecutionResult<State> res;
    res.states.reserve(n);
    for (node_t v = 0; v < n; ++v) res.states.push_back(prog.init(g.degree(v)));

    std::vector<std::vector<std::optional<Message>>> inbox(n), outbox(n);
    std::vector<State> next(res.states);
    std::vector<char> stepped(n, 0);
    for (node_t v = 0; v < n; ++v) {
        inbox[v].resize(g.degree(v));
        outbox[v].resize(g.degree(v));
    }

    auto inbox_nonempty = [&](node_t v) {
        for (const auto& m : inbox[v])
            if (m) return true;
        return false;
    };

    // Steps eligible nodes for one round; returns false on the first
    // violation (recorded in res). receive_only forbids any send.
    auto sweep = [&](std::size_t round, bool receive_only) -> bool {
        detail::parallel_over(order.size(), opt.threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const node_t v = order[i];
                const bool live = !prog.halted(res.states[v]);
                if (!live && !inbox_nonempty(v)) {
                    stepped[v] = 0;
                    continue;
                }
                next[v] = prog.on_round(res.states[v], round,
                                        Inbox(inbox[v].data(), inbox[v].size()),
                                        Outbox(outbox[v].data(), outbox[v].size()));
                stepped[v] = 1;
            }
        });
        // Validation, stats and tracing in index order for determinism.
        for (node_t v = 0; v < n; ++v) {
            if (!stepped[v]) continue;
            const bool was_halted = prog.halted(res.states[v]);
            TraceRecord rec{round, v, {}, {}};
            for (port_t p = 1; p <= outbox[v].size(); ++p) {
                const auto& m = outbox[v][p - 1];
                if (!m) continue;
                if (receive_only || was_halted) {
                    res.violation = {"message sent by halted node", v, round};
                } else if (m->payload && *m->payload > n) {
                    res.violation = {"payload exceeds n", v, round};
                } else if (m->payload.has_value() != tag_carries_payload(m->tag)) {
                    res.violation = {"payload/tag mismatch", v, round};
                }
                if (res.violation) {
                    res.status = RunStatus::protocol_violation;
                    return false;
                }
                res.stats.total_messages += 1;
                res.stats.max_message_bits =
                    std::max(res.stats.max_message_bits, message_bits(*m, n));
                if (opt.trace) rec.sent.emplace_back(p, *m);
            }
            if (opt.trace) {
                if constexpr (detail::has_describe<P>) rec.digest = prog.describe(next[v]);
                opt.trace(rec);
            }
        }
        // Deliver: sent in this round, visible next round.
        for (node_t v = 0; v < n; ++v)
            if (stepped[v]) res.states[v] = next[v];
        for (auto& row : inbox) std::fill(row.begin(), row.end(), std::nullopt);
        for (node_t v = 0; v < n; ++v) {
            for (port_t p = 1; p <= outbox[v].size(); ++p) {
                if (!outbox[v][p - 1]) continue;
                const auto& entry = g.port(v, p);
                inbox[entry.neighbor][entry.reciprocal - 1] = *outbox[v][p - 1];
                outbox[v][p - 1].reset();
            }
        }
        return true;
    };

    auto all_halted = [&] {
        for (node_t v = 0; v < n; ++v)
            if (!prog.halted(res.states[v])) return false;
        return true;
    };

    std::size_t round = 0;
    bool halted = false;
    do {
        ++round;
        if (!sweep(round, false)) {
            res.stats.rounds_executed = round;
            return res;
        }
        halted = all_halted();
    } while (!halted && round < max_rounds);
    res.stats.rounds_executed = round;

    if (!halted) {
        res.status = RunStatus::round_limit;
        return res;
    }
    bool pending = false;
    for (node_t v = 0; v < n && !pending; ++v) pending = inbox_nonempty(v);
    if (pending) sweep(round + 1, true);
    return res;
}

}  // namespace pnmds
