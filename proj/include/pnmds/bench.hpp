#pragma once

#include <chrono>
#include <cstdio>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pnmds/generators.hpp"
#include "pnmds/mds_protocol.hpp"
#include "pnmds/oracle.hpp"

namespace pnmds {

inline constexpr std::uint64_t kDefaultOracleBudget = 10'000'000;
inline constexpr std::size_t kDefaultExactUpTo = 22;

/// One bench row. Optional fields stay empty in the CSV; runtime is
/// recorded only when timing is on, keeping default output byte-stable
/// across runs.
struct BenchRecord {
    std::string family;
    std::string parameters;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t d1_size = 0;
    std::size_t d2_size = 0;
    std::size_t d3_size = 0;
    std::size_t d_size = 0;
    std::optional<std::size_t> exact_size;
    std::size_t greedy_size = 0;
    std::optional<Ratio> ratio;
    std::size_t rounds = 0;
    std::size_t max_message_bits = 0;
    std::optional<double> runtime_ms;
};

/// A gate (domination, round count, message budget, or the ratio bound)
/// failed on a specific instance; the message pins the instance down for
/// reproduction.
class bench_gate_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BenchPlan {
    std::vector<Family> families{kAllFamilies.begin(), kAllFamilies.end()};
    std::size_t n_min = 3;
    std::size_t n_max = 22;
    std::vector<std::uint64_t> seeds = {1};
    std::size_t exact_up_to = kDefaultExactUpTo;
    std::uint64_t oracle_budget = kDefaultOracleBudget;
    bool timings = false;
    unsigned jobs = 1;
};

namespace detail {

/// keep-prob rotation for subsampled families; mixes full, dense and
/// sparse (often disconnected) instances deterministically.
inline double keep_prob_for(std::size_t n, std::uint64_t seed) {
    constexpr double probs[] = {1.0, 0.85, 0.6, 0.35};
    return probs[(n + seed) % 4];
}

}  // namespace detail

/// Derives the per-family instance for one (family, target n, seed)
/// triple. Families whose smallest form exceeds the target are skipped
/// by returning nullopt (e.g. cycles below n=3). The realized node count
/// may differ slightly from the target (grids, caterpillars).
inline std::optional<FamilySpec> derive_spec(Family f, std::size_t n, std::uint64_t seed) {
    FamilySpec s;
    s.family = f;
    s.seed = seed;
    switch (f) {
        case Family::grid: {
            std::size_t rows = 1;
            while ((rows + 1) * (rows + 1) <= n) ++rows;
            s.rows = rows;
            s.cols = (n + rows - 1) / rows;
            break;
        }
        case Family::cycle:
            if (n < 3) return std::nullopt;
            s.n = n;
            break;
        case Family::star:
            if (n < 1) return std::nullopt;
            s.k = n - 1;
            break;
        case Family::caterpillar:
            if (n < 2) return std::nullopt;
            s.leaves = 3;
            s.spine = std::max<std::size_t>(1, n / 4);
            break;
        case Family::shared_hub:
            if (n < 3) return std::nullopt;
            s.k = n - 2;
            break;
        case Family::triangulation:
            if (n < 3) return std::nullopt;
            s.n = n;
            s.edge_keep_prob = detail::keep_prob_for(n, seed);
            break;
    }
    return s;
}

inline std::vector<FamilySpec> enumerate_instances(const BenchPlan& plan) {
    std::vector<FamilySpec> specs;
    for (Family f : plan.families)
        for (std::size_t n = plan.n_min; n <= plan.n_max; ++n)
            for (std::uint64_t seed : plan.seeds)
                if (auto s = derive_spec(f, n, seed)) specs.push_back(*s);
    return specs;
}

/// Runs one instance through the protocol plus baselines and applies the
/// hard gates: the output dominates, the round count is exactly 18, the
/// message budget holds, and |D| ≤ 636·|M| wherever the oracle certifies
/// an optimum.
inline BenchRecord run_instance(const FamilySpec& spec, std::size_t exact_up_to,
                                std::uint64_t oracle_budget, bool timings) {
    BenchRecord rec;
    rec.family = std::string(family_name(spec.family));
    rec.parameters = spec.parameters();
    rec.seed = spec.seed;

    const PortGraph g = instantiate(spec);
    rec.n = g.node_count();
    rec.m = g.edge_count();

    auto fail = [&](const std::string& what) {
        throw bench_gate_error("gate failure [" + rec.family + " " + rec.parameters +
                               " seed=" + std::to_string(rec.seed) + "]: " + what);
    };

    const auto t0 = std::chrono::steady_clock::now();
    const MdsResult result = run_distributed(g);
    const auto t1 = std::chrono::steady_clock::now();
    if (timings) rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    rec.d_size = result.d.size();
    rec.d1_size = result.d1.size();
    rec.d2_size = result.d2.size();
    rec.d3_size = result.d3.size();
    rec.rounds = result.stats.rounds_executed;
    rec.max_message_bits = result.stats.max_message_bits;

    if (auto check = is_dominating(g, result.d); !check.ok)
        fail("output is not dominating, witness " + std::to_string(check.witness));
    if (result.stats.rounds_executed != kMdsRounds)
        fail("rounds_executed = " + std::to_string(result.stats.rounds_executed));
    if (auto congest = assert_congest(result.stats, g.node_count()); !congest.ok)
        fail("message of " + std::to_string(congest.bits) + " bits over budget");

    rec.greedy_size = greedy_mds(g).size();

    if (g.node_count() <= exact_up_to) {
        const OracleResult oracle = exact_mds(g, oracle_budget);
        if (oracle.optimal) {
            rec.exact_size = oracle.size;
            rec.ratio = ratio(result, oracle);
            if (!rec.ratio->at_most(kRatioBound))
                fail("ratio " + std::to_string(rec.ratio->value()) + " exceeds " +
                     std::to_string(kRatioBound));
        }
    }
    return rec;
}

struct BenchSummary {
    std::size_t instances = 0;
    std::size_t with_oracle = 0;
    std::optional<Ratio> max_ratio;
};

inline std::vector<BenchRecord> run_bench(const BenchPlan& plan, BenchSummary* summary = nullptr) {
    const auto specs = enumerate_instances(plan);
    std::vector<BenchRecord> rows(specs.size());
    std::exception_ptr first_error;
    std::mutex error_mu;
    detail::parallel_over(specs.size(), plan.jobs, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            try {
                rows[i] = run_instance(specs[i], plan.exact_up_to, plan.oracle_budget,
                                       plan.timings);
            } catch (...) {
                std::scoped_lock lock(error_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    });
    if (first_error) std::rethrow_exception(first_error);
    if (summary) {
        summary->instances = rows.size();
        for (const auto& r : rows) {
            if (!r.ratio) continue;
            ++summary->with_oracle;
            if (!summary->max_ratio || *summary->max_ratio < *r.ratio) summary->max_ratio = r.ratio;
        }
    }
    return rows;
}

inline std::string format_ratio(const Ratio& r) {
    if (r.den == 1) return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

inline constexpr std::string_view kCsvHeader =
    "family,parameters,seed,n,m,d1_size,d2_size,d3_size,d_size,exact_size,greedy_size,ratio,"
    "rounds,max_message_bits,runtime_ms";

inline void write_csv(std::ostream& os, const std::vector<BenchRecord>& rows) {
    os << kCsvHeader << "\n";
    for (const auto& r : rows) {
        os << r.family << "," << r.parameters << "," << r.seed << "," << r.n << "," << r.m << ","
           << r.d1_size << "," << r.d2_size << "," << r.d3_size << "," << r.d_size << ",";
        if (r.exact_size) os << *r.exact_size;
        os << "," << r.greedy_size << ",";
        if (r.ratio) os << format_ratio(*r.ratio);
        os << "," << r.rounds << "," << r.max_message_bits << ",";
        if (r.runtime_ms) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", *r.runtime_ms);
            os << buf;
        }
        os << "\n";
    }
}

}  // namespace pnmds
