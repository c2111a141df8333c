#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "pnmds/generators.hpp"
#include "pnmds/sync_engine.hpp"

using namespace pnmds;

namespace {

// Halts immediately; sends nothing.
struct IdleProgram {
    struct State {
        std::size_t degree;
    };
    State init(std::size_t degree) const { return {degree}; }
    State on_round(const State& s, std::size_t, Inbox, Outbox) const { return s; }
    bool halted(const State&) const { return true; }
};

// Sends one DOMINATED bit on every port in round 1, reads the echoes in
// round 2, then halts.
struct PingProgram {
    struct State {
        std::size_t heard = 0;
        bool done = false;
    };
    State init(std::size_t) const { return {}; }
    State on_round(const State& s, std::size_t round, Inbox in, Outbox out) const {
        State next = s;
        if (round == 1) {
            for (auto& slot : out) slot = Message{MessageTag::dominated, {}};
        } else {
            for (const auto& m : in)
                if (m && m->tag == MessageTag::dominated) ++next.heard;
            next.done = true;
        }
        return next;
    }
    bool halted(const State& s) const { return s.done; }
};

// Round 1: every node announces its own view of each port by sending the
// port number as a DELTA payload. Round 2: record what arrived where.
struct PortEchoProgram {
    struct State {
        std::vector<std::uint32_t> received;
        bool done = false;
    };
    State init(std::size_t degree) const { return {std::vector<std::uint32_t>(degree, 0), false}; }
    State on_round(const State& s, std::size_t round, Inbox in, Outbox out) const {
        State next = s;
        if (round == 1) {
            for (std::size_t p = 0; p < out.size(); ++p)
                out[p] = Message{MessageTag::delta, static_cast<std::uint32_t>(p + 1)};
        } else {
            for (std::size_t p = 0; p < in.size(); ++p)
                if (in[p]) next.received[p] = *in[p]->payload;
            next.done = true;
        }
        return next;
    }
    bool halted(const State& s) const { return s.done; }
};

// Gossip-style maximum of initial degrees; never halts on its own.
struct RestlessProgram {
    struct State {
        std::uint32_t value;
    };
    State init(std::size_t degree) const { return {static_cast<std::uint32_t>(degree)}; }
    State on_round(const State& s, std::size_t, Inbox in, Outbox out) const {
        State next = s;
        for (const auto& m : in)
            if (m) next.value = std::max(next.value, *m->payload);
        for (auto& slot : out) slot = Message{MessageTag::delta, next.value};
        return next;
    }
    bool halted(const State&) const { return false; }
};

struct BadPayloadProgram {
    struct State {
        bool done = false;
    };
    State init(std::size_t) const { return {}; }
    State on_round(const State& s, std::size_t, Inbox, Outbox out) const {
        for (auto& slot : out) slot = Message{MessageTag::delta, 5};  // > n on small graphs
        State next = s;
        next.done = true;
        return next;
    }
    bool halted(const State& s) const { return s.done; }
};

struct TaglessPayloadProgram {
    struct State {
        bool done = false;
    };
    State init(std::size_t) const { return {}; }
    State on_round(const State& s, std::size_t, Inbox, Outbox out) const {
        for (auto& slot : out) slot = Message{MessageTag::in_d, 1};  // flag tags carry no payload
        State next = s;
        next.done = true;
        return next;
    }
    bool halted(const State& s) const { return s.done; }
};

}  // namespace

TEST_CASE("message bit accounting") {
    REQUIRE(message_bits({MessageTag::in_d, {}}, 10) == 4);
    REQUIRE(message_bits({MessageTag::in_d, {}}, 1000000) == 4);
    REQUIRE(message_bits({MessageTag::delta, 7}, 100) == 11);  // 4 + ceil(log2 101)
    REQUIRE(message_bits({MessageTag::delta, 0}, 1) == 5);     // 4 + ceil(log2 2)
}

TEST_CASE("congest verdicts") {
    REQUIRE(assert_congest({1, 4, 1}, 10).ok);
    REQUIRE(assert_congest({1, 11, 1}, 100).ok);  // budget is exactly 11
    auto bad = assert_congest({1, 12, 1}, 100);
    REQUIRE_FALSE(bad.ok);
    REQUIRE(bad.bits == 12);
}

TEST_CASE("idle program runs one empty round") {
    auto g = PortGraph::from_edge_list(1, {});
    auto res = execute(g, IdleProgram{}, 10);
    REQUIRE(res.status == RunStatus::completed);
    REQUIRE(res.stats.rounds_executed == 1);
    REQUIRE(res.stats.total_messages == 0);
    REQUIRE(res.stats.max_message_bits == 0);
}

TEST_CASE("two-node flag exchange") {
    auto g = PortGraph::from_edge_list(2, {{0, 1}});
    auto res = execute(g, PingProgram{}, 10);
    REQUIRE(res.status == RunStatus::completed);
    REQUIRE(res.stats.total_messages == 2);
    REQUIRE(res.stats.max_message_bits == 4);
    REQUIRE(res.states[0].heard == 1);
    REQUIRE(res.states[1].heard == 1);
}

TEST_CASE("delivery respects port reciprocity") {
    // Path 0-1-2 from edges [(0,1),(1,2)]: node 1 sends its port 2 value
    // to node 2, which must see it on port 1.
    auto g = PortGraph::from_edge_list(3, {{0, 1}, {1, 2}});
    auto res = execute(g, PortEchoProgram{}, 10);
    REQUIRE(res.status == RunStatus::completed);
    REQUIRE(res.states[2].received == std::vector<std::uint32_t>{2});
    REQUIRE(res.states[0].received == std::vector<std::uint32_t>{1});
    REQUIRE(res.states[1].received == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("evaluation order and threading do not change the outcome") {
    auto g = gen_random_triangulation(40, 11);
    auto baseline = execute(g, RestlessProgram{}, 6);
    REQUIRE(baseline.status == RunStatus::round_limit);

    std::vector<node_t> reversed(g.node_count());
    std::iota(reversed.begin(), reversed.end(), 0);
    std::reverse(reversed.begin(), reversed.end());
    ExecuteOptions shuffled;
    shuffled.eval_order = reversed;
    auto res_shuffled = execute(g, RestlessProgram{}, 6, shuffled);

    ExecuteOptions threaded;
    threaded.threads = 4;
    auto res_threaded = execute(g, RestlessProgram{}, 6, threaded);

    for (node_t v = 0; v < g.node_count(); ++v) {
        REQUIRE(baseline.states[v].value == res_shuffled.states[v].value);
        REQUIRE(baseline.states[v].value == res_threaded.states[v].value);
    }
    REQUIRE(baseline.stats.total_messages == res_shuffled.stats.total_messages);
    REQUIRE(baseline.stats.total_messages == res_threaded.stats.total_messages);
    REQUIRE(baseline.stats.max_message_bits == res_threaded.stats.max_message_bits);
}

TEST_CASE("non-termination is reported") {
    auto g = gen_cycle(4);
    auto res = execute(g, RestlessProgram{}, 7);
    REQUIRE(res.status == RunStatus::round_limit);
    REQUIRE(res.stats.rounds_executed == 7);
}

TEST_CASE("protocol violations are reported") {
    SECTION("payload exceeding n") {
        auto g = PortGraph::from_edge_list(2, {{0, 1}});
        auto res = execute(g, BadPayloadProgram{}, 3);
        REQUIRE(res.status == RunStatus::protocol_violation);
        REQUIRE(res.violation.has_value());
        REQUIRE(res.violation->what == "payload exceeds n");
    }
    SECTION("payload on a flag tag") {
        auto g = PortGraph::from_edge_list(2, {{0, 1}});
        auto res = execute(g, TaglessPayloadProgram{}, 3);
        REQUIRE(res.status == RunStatus::protocol_violation);
        REQUIRE(res.violation->what == "payload/tag mismatch");
    }
}

TEST_CASE("trace sink sees every send") {
    auto g = PortGraph::from_edge_list(2, {{0, 1}});
    std::size_t sends = 0, records = 0;
    ExecuteOptions opt;
    opt.trace = [&](const TraceRecord& rec) {
        ++records;
        sends += rec.sent.size();
    };
    auto res = execute(g, PingProgram{}, 10, opt);
    REQUIRE(res.status == RunStatus::completed);
    REQUIRE(sends == 2);
    REQUIRE(records == 4);  // 2 nodes x 2 rounds
}
