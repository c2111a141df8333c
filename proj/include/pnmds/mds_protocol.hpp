#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pnmds/sync_engine.hpp"

namespace pnmds {

// Distributed minimum-dominating-set approximation for the anonymous
// port-numbering model. The algorithm runs two rounds of a 2-hop
// domination subroutine and then lets every still-undominated vertex pull
// one dominated neighbor into D, in 18 fixed communication rounds with
// one short message per port per round:
//
//   R1/R8/R15   IN_D broadcast          -> neighbors' D membership
//   R2/R9/R16   DOMINATED broadcast     -> residual degree δ = |N⁺_v ∖ N⁺_D|
//   R3/R10      DELTA(δ) broadcast      -> v ∉ D picks x(v), a δ-maximizer in N⁺_v
//   R4/R11      CHOOSE_X to x(v)        -> chosen (or self-chosen) nodes form X
//   R5/R12      IN_X broadcast          -> δˣ = |N⁺_v ∩ X|
//   R6/R13      DELTA_X(δˣ) broadcast   -> v ∈ X picks d(v), a δˣ-maximizer in N⁺_v
//   R7/R14      CHOOSE_D to d(v)        -> receivers join D (phase D1, resp. D2)
//   R17         DELTA(δ) broadcast      -> undominated v picks w(v), a δ-maximizer
//                                          among dominated non-D neighbors
//   R18         CHOOSE_W to w(v)        -> receivers join D (phase D3)
//
// Every "choose any" is resolved the same way everywhere: prefer self when
// self attains the maximum, otherwise the lowest local port. That makes
// the run deterministic and identifier-free, so relabeling nodes permutes
// the output exactly.

enum class JoinPhase : std::uint8_t { none = 0, d1, d2, d3 };

/// A local choice: either this node itself or one of its ports.
struct LocalChoice {
    static LocalChoice self() { return {0}; }
    static LocalChoice at_port(port_t p) { return {p}; }
    bool is_self() const { return raw == 0; }
    port_t port() const { return raw; }  // valid when !is_self()
    std::uint32_t raw;
    friend bool operator==(const LocalChoice&, const LocalChoice&) = default;
};

struct MdsNodeState {
    /// Last flags/values heard through one port.
    struct PortInfo {
        bool in_d = false;
        bool dominated = false;
        bool in_x = false;
        std::uint32_t delta = 0;
        std::uint32_t delta_x = 0;
    };

    std::uint32_t degree = 0;
    bool in_d = false;
    bool dominated = false;
    bool in_x = false;
    std::uint32_t residual_degree = 0;  // δ = |N⁺_v ∖ N⁺_D|, ≤ deg+1
    std::uint32_t residual_x = 0;       // δˣ = |N⁺_v ∩ X|
    std::optional<LocalChoice> x_choice;
    std::optional<LocalChoice> d_choice;
    std::optional<LocalChoice> w_choice;  // never self: w(v) is a neighbor
    JoinPhase joined_in = JoinPhase::none;
    bool finished = false;
    std::vector<PortInfo> ports;
};

class MdsProgram {
public:
    using State = MdsNodeState;

    State init(std::size_t degree) const {
        State s;
        s.degree = static_cast<std::uint32_t>(degree);
        s.ports.resize(degree);
        return s;
    }

    bool halted(const State& s) const { return s.finished; }

    State on_round(const State& prev, std::size_t round, Inbox in, Outbox out) const {
        State s = prev;
        switch (round) {
            case 1:
            case 8:
            case 15:
                if (round != 1) {
                    if (received_any(in, MessageTag::choose_d))
                        join(s, round == 8 ? JoinPhase::d1 : JoinPhase::d2);
                    // Fresh X per subroutine call.
                    s.in_x = false;
                    s.residual_x = 0;
                    s.x_choice.reset();
                    s.d_choice.reset();
                }
                broadcast_flag(out, s.in_d, MessageTag::in_d);
                break;

            case 2:
            case 9:
            case 16: {
                record_flag(s, in, MessageTag::in_d, &State::PortInfo::in_d);
                bool any = s.in_d;
                for (const auto& p : s.ports) any = any || p.in_d;
                s.dominated = any;
                broadcast_flag(out, s.dominated, MessageTag::dominated);
                break;
            }

            case 3:
            case 10:
            case 17: {
                record_flag(s, in, MessageTag::dominated, &State::PortInfo::dominated);
                std::uint32_t r = s.dominated ? 0 : 1;
                for (const auto& p : s.ports) r += p.dominated ? 0 : 1;
                s.residual_degree = r;
                broadcast_value(out, MessageTag::delta, s.residual_degree);
                break;
            }

            case 4:
            case 11:
                record_value(s, in, MessageTag::delta, &State::PortInfo::delta);
                if (!s.in_d) {
                    s.x_choice = pick_maximizer(s, &State::PortInfo::delta, s.residual_degree);
                    if (s.x_choice->is_self())
                        s.in_x = true;
                    else
                        out[s.x_choice->port() - 1] = Message{MessageTag::choose_x, {}};
                }
                break;

            case 5:
            case 12:
                if (received_any(in, MessageTag::choose_x)) s.in_x = true;
                broadcast_flag(out, s.in_x, MessageTag::in_x);
                break;

            case 6:
            case 13: {
                record_flag(s, in, MessageTag::in_x, &State::PortInfo::in_x);
                std::uint32_t r = s.in_x ? 1 : 0;
                for (const auto& p : s.ports) r += p.in_x ? 1 : 0;
                s.residual_x = r;
                broadcast_value(out, MessageTag::delta_x, s.residual_x);
                break;
            }

            case 7:
            case 14:
                record_value(s, in, MessageTag::delta_x, &State::PortInfo::delta_x);
                if (s.in_x) {
                    s.d_choice = pick_maximizer(s, &State::PortInfo::delta_x, s.residual_x);
                    if (s.d_choice->is_self())
                        join(s, round == 7 ? JoinPhase::d1 : JoinPhase::d2);
                    else
                        out[s.d_choice->port() - 1] = Message{MessageTag::choose_d, {}};
                }
                break;

            case 18:
                record_value(s, in, MessageTag::delta, &State::PortInfo::delta);
                if (!s.dominated) {
                    // Candidates are exactly N⁺_v ∩ N_D: neighbors that
                    // reported dominated but not in D. Nonempty whenever
                    // the first subroutine call left v within two hops
                    // of D, which it always does.
                    std::optional<port_t> best;
                    std::uint32_t best_delta = 0;
                    for (port_t p = 1; p <= s.ports.size(); ++p) {
                        const auto& info = s.ports[p - 1];
                        if (!info.dominated || info.in_d) continue;
                        if (!best || info.delta > best_delta) {
                            best = p;
                            best_delta = info.delta;
                        }
                    }
                    if (best) {
                        s.w_choice = LocalChoice::at_port(*best);
                        out[*best - 1] = Message{MessageTag::choose_w, {}};
                    }
                }
                s.finished = true;
                break;

            default:
                // Settlement step: consume the final CHOOSE_W deliveries.
                if (received_any(in, MessageTag::choose_w)) join(s, JoinPhase::d3);
                break;
        }
        return s;
    }

    std::string describe(const State& s) const {
        std::ostringstream os;
        os << "inD=" << s.in_d << " dom=" << s.dominated << " inX=" << s.in_x
           << " delta=" << s.residual_degree << " deltaX=" << s.residual_x
           << " joined=" << static_cast<int>(s.joined_in);
        return os.str();
    }

private:
    static void join(State& s, JoinPhase phase) {
        if (s.in_d) return;  // joined_in keeps the first phase only
        s.in_d = true;
        s.joined_in = phase;
    }

    static bool received_any(Inbox in, MessageTag tag) {
        for (const auto& m : in)
            if (m && m->tag == tag) return true;
        return false;
    }

    static void broadcast_flag(Outbox out, bool flag, MessageTag tag) {
        if (!flag) return;  // absence encodes false, at zero bits
        for (auto& slot : out) slot = Message{tag, {}};
    }

    static void broadcast_value(Outbox out, MessageTag tag, std::uint32_t value) {
        for (auto& slot : out) slot = Message{tag, value};
    }

    static void record_flag(State& s, Inbox in, MessageTag tag, bool State::PortInfo::*field) {
        for (std::size_t i = 0; i < in.size(); ++i)
            s.ports[i].*field = in[i] && in[i]->tag == tag;
    }

    static void record_value(State& s, Inbox in, MessageTag tag,
                             std::uint32_t State::PortInfo::*field) {
        for (std::size_t i = 0; i < in.size(); ++i)
            if (in[i] && in[i]->tag == tag) s.ports[i].*field = *in[i]->payload;
    }

    /// The shared tie-break: self when self attains the maximum over
    /// N⁺_v, otherwise the lowest port among the maximizers.
    static LocalChoice pick_maximizer(const State& s, std::uint32_t State::PortInfo::*field,
                                      std::uint32_t self_value) {
        std::uint32_t best = self_value;
        for (const auto& p : s.ports) best = std::max(best, p.*field);
        if (self_value == best) return LocalChoice::self();
        for (port_t p = 1; p <= s.ports.size(); ++p)
            if (s.ports[p - 1].*field == best) return LocalChoice::at_port(p);
        return LocalChoice::self();  // unreachable
    }
};

/// Output of one run: the dominating set D with its phase decomposition
/// (a node lands in the part for the first phase that added it, so the
/// three parts partition D) and the engine statistics.
struct MdsResult {
    std::vector<node_t> d;
    std::vector<node_t> d1;
    std::vector<node_t> d2;
    std::vector<node_t> d3;
    RunStats stats;

    bool same_sets(const MdsResult& o) const {
        return d == o.d && d1 == o.d1 && d2 == o.d2 && d3 == o.d3;
    }
};

inline constexpr std::size_t kMdsRounds = 18;

/// Runs the full 18-round protocol. The result is a dominating set on
/// every input; message sizes stay within the CONGEST budget by
/// construction, and both facts are re-asserted here.
inline MdsResult run_distributed(const PortGraph& g, const ExecuteOptions& opt = {}) {
    if (g.node_count() == 0)
        throw std::invalid_argument("run_distributed: graph must have at least one node");
    auto run = execute(g, MdsProgram{}, kMdsRounds, opt);
    if (run.status != RunStatus::completed)
        throw std::logic_error("run_distributed: protocol did not complete: " +
                               (run.violation ? run.violation->what : std::string("round limit")));
    MdsResult res;
    res.stats = run.stats;
    for (node_t v = 0; v < g.node_count(); ++v) {
        const auto& s = run.states[v];
        if (!s.in_d) continue;
        res.d.push_back(v);
        switch (s.joined_in) {
            case JoinPhase::d1: res.d1.push_back(v); break;
            case JoinPhase::d2: res.d2.push_back(v); break;
            case JoinPhase::d3: res.d3.push_back(v); break;
            case JoinPhase::none: throw std::logic_error("in_d without join phase");
        }
    }
    if (auto congest = assert_congest(res.stats, g.node_count()); !congest.ok)
        throw std::logic_error("run_distributed: CONGEST budget exceeded: " +
                               std::to_string(congest.bits) + " bits");
    return res;
}

namespace detail {

/// Self-first, then lowest-port maximizer over N⁺_v, evaluated
/// centrally. Mirrors MdsProgram::pick_maximizer exactly.
inline std::optional<node_t> ref_pick(const PortGraph& g, node_t v,
                                      const std::vector<std::uint32_t>& value,
                                      bool self_candidate,
                                      const std::vector<char>* port_eligible = nullptr) {
    std::optional<std::uint32_t> best;
    if (self_candidate) best = value[v];
    const auto ports = g.ports(v);
    for (port_t p = 1; p <= ports.size(); ++p) {
        if (port_eligible && !(*port_eligible)[p - 1]) continue;
        const auto u = ports[p - 1].neighbor;
        if (!best || value[u] > *best) best = value[u];
    }
    if (!best) return std::nullopt;
    if (self_candidate && value[v] == *best) return v;
    for (port_t p = 1; p <= ports.size(); ++p) {
        if (port_eligible && !(*port_eligible)[p - 1]) continue;
        const auto u = ports[p - 1].neighbor;
        if (value[u] == *best) return u;
    }
    return std::nullopt;  // unreachable
}

inline std::vector<char> dominated_by(const PortGraph& g, const std::vector<char>& in_d) {
    std::vector<char> dom(g.node_count(), 0);
    for (node_t v = 0; v < g.node_count(); ++v) {
        if (!in_d[v]) continue;
        dom[v] = 1;
        for (const auto& e : g.ports(v)) dom[e.neighbor] = 1;
    }
    return dom;
}

inline std::vector<std::uint32_t> residual_degrees(const PortGraph& g,
                                                   const std::vector<char>& dom) {
    std::vector<std::uint32_t> delta(g.node_count(), 0);
    for (node_t v = 0; v < g.node_count(); ++v) {
        std::uint32_t r = dom[v] ? 0 : 1;
        for (const auto& e : g.ports(v)) r += dom[e.neighbor] ? 0 : 1;
        delta[v] = r;
    }
    return delta;
}

}  // namespace detail

/// Centralized evaluation of the 2-hop domination subroutine, with the
/// same tie-break rule as the node program: given the current D, every
/// vertex outside D nominates a residual-degree maximizer x(v) in its
/// closed neighborhood; the nominated set X then nominates δˣ-maximizers
/// d(v), which form the returned set.
inline std::vector<node_t> hop2_dominate_ref(const PortGraph& g, std::span<const node_t> d_in) {
    const std::size_t n = g.node_count();
    std::vector<char> in_d(n, 0);
    for (node_t v : d_in) in_d.at(v) = 1;

    const auto dom = detail::dominated_by(g, in_d);
    const auto delta = detail::residual_degrees(g, dom);

    std::vector<char> in_x(n, 0);
    for (node_t v = 0; v < n; ++v) {
        if (in_d[v]) continue;
        auto x = detail::ref_pick(g, v, delta, true);
        in_x[*x] = 1;
    }

    std::vector<std::uint32_t> delta_x(n, 0);
    for (node_t v = 0; v < n; ++v) {
        std::uint32_t r = in_x[v] ? 1 : 0;
        for (const auto& e : g.ports(v)) r += in_x[e.neighbor] ? 1 : 0;
        delta_x[v] = r;
    }

    std::vector<char> chosen(n, 0);
    for (node_t v = 0; v < n; ++v) {
        if (!in_x[v]) continue;
        auto d = detail::ref_pick(g, v, delta_x, true);
        chosen[*d] = 1;
    }

    std::vector<node_t> out;
    for (node_t v = 0; v < n; ++v)
        if (chosen[v]) out.push_back(v);
    return out;
}

/// Sequential restatement of the whole algorithm, used for differential
/// testing against the message-passing run. Field-by-field equal to
/// run_distributed except stats (left zeroed).
inline MdsResult reference_mds(const PortGraph& g) {
    const std::size_t n = g.node_count();
    if (n == 0) throw std::invalid_argument("reference_mds: graph must have at least one node");
    MdsResult res;
    std::vector<char> in_d(n, 0);
    std::vector<JoinPhase> phase(n, JoinPhase::none);

    auto absorb = [&](std::span<const node_t> add, JoinPhase p) {
        for (node_t v : add) {
            if (in_d[v]) continue;
            in_d[v] = 1;
            phase[v] = p;
        }
    };

    std::vector<node_t> d_now;
    auto d1 = hop2_dominate_ref(g, d_now);
    absorb(d1, JoinPhase::d1);
    d_now.clear();
    for (node_t v = 0; v < n; ++v)
        if (in_d[v]) d_now.push_back(v);

    auto d2 = hop2_dominate_ref(g, d_now);
    absorb(d2, JoinPhase::d2);

    // Closing phase: every undominated vertex pulls in a residual-degree
    // maximizer among its dominated non-D neighbors.
    const auto dom = detail::dominated_by(g, in_d);
    const auto delta = detail::residual_degrees(g, dom);
    std::vector<node_t> d3;
    for (node_t v = 0; v < n; ++v) {
        if (dom[v]) continue;
        const auto ports = g.ports(v);
        std::vector<char> eligible(ports.size(), 0);
        bool any = false;
        for (port_t p = 1; p <= ports.size(); ++p) {
            const auto u = ports[p - 1].neighbor;
            if (dom[u] && !in_d[u]) {
                eligible[p - 1] = 1;
                any = true;
            }
        }
        if (!any) continue;  // cannot happen after the first subroutine call
        auto w = detail::ref_pick(g, v, delta, false, &eligible);
        d3.push_back(*w);
    }
    absorb(d3, JoinPhase::d3);

    for (node_t v = 0; v < n; ++v) {
        if (!in_d[v]) continue;
        res.d.push_back(v);
        switch (phase[v]) {
            case JoinPhase::d1: res.d1.push_back(v); break;
            case JoinPhase::d2: res.d2.push_back(v); break;
            case JoinPhase::d3: res.d3.push_back(v); break;
            case JoinPhase::none: break;
        }
    }
    return res;
}

/// Is every vertex within two hops of D? Returns the farthest violator
/// otherwise. Holds after each 2-hop subroutine call by construction.
inline CoverCheck two_hop_check(const PortGraph& g, std::span<const node_t> d) {
    return within_distance(g, d, 2);
}

}  // namespace pnmds
