#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "pnmds/bench.hpp"

using namespace pnmds;

TEST_CASE("instance enumeration is deterministic and ordered") {
    BenchPlan plan;
    plan.n_min = 1;
    plan.n_max = 8;
    plan.seeds = {1, 2};
    auto a = enumerate_instances(plan);
    auto b = enumerate_instances(plan);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].family == b[i].family);
        REQUIRE(a[i].seed == b[i].seed);
        REQUIRE(a[i].parameters() == b[i].parameters());
    }
    // cycles below n=3 are skipped
    for (const auto& s : a)
        if (s.family == Family::cycle) REQUIRE(s.n >= 3);
}

TEST_CASE("bench runs apply gates and fill rows") {
    BenchPlan plan;
    plan.families = {Family::cycle, Family::star};
    plan.n_min = 3;
    plan.n_max = 12;
    plan.seeds = {1};
    BenchSummary summary;
    auto rows = run_bench(plan, &summary);
    REQUIRE(rows.size() == 20);
    REQUIRE(summary.instances == rows.size());
    REQUIRE(summary.with_oracle == rows.size());  // all within exact_up_to
    REQUIRE(summary.max_ratio.has_value());
    REQUIRE(summary.max_ratio->at_most(kRatioBound));
    for (const auto& r : rows) {
        REQUIRE(r.rounds == kMdsRounds);
        REQUIRE(r.d_size == r.d1_size + r.d2_size + r.d3_size);
        REQUIRE(r.exact_size.has_value());
        REQUIRE(*r.exact_size <= r.greedy_size);
        REQUIRE_FALSE(r.runtime_ms.has_value());
    }
}

TEST_CASE("csv output is byte-identical across runs") {
    BenchPlan plan;
    plan.n_min = 3;
    plan.n_max = 10;
    plan.seeds = {1, 2};
    auto render = [&] {
        std::ostringstream os;
        write_csv(os, run_bench(plan));
        return os.str();
    };
    const std::string first = render();
    REQUIRE(first == render());
    REQUIRE(first.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    // one line per instance plus the header
    const auto lines = std::count(first.begin(), first.end(), '\n');
    REQUIRE(static_cast<std::size_t>(lines) == enumerate_instances(plan).size() + 1);
}

TEST_CASE("parallel bench matches serial bench") {
    BenchPlan plan;
    plan.n_min = 3;
    plan.n_max = 14;
    plan.seeds = {1};
    auto serial = run_bench(plan);
    plan.jobs = 4;
    auto parallel = run_bench(plan);
    std::ostringstream a, b;
    write_csv(a, serial);
    write_csv(b, parallel);
    REQUIRE(a.str() == b.str());
}

TEST_CASE("timings flag populates the runtime column") {
    BenchPlan plan;
    plan.families = {Family::grid};
    plan.n_min = 4;
    plan.n_max = 4;
    plan.timings = true;
    auto rows = run_bench(plan);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].runtime_ms.has_value());
}
