// Command-line front end: generate graphs, run the protocol, compute
// exact optima, batch-benchmark, and verify result files. Structured
// output goes to stdout (JSON lines or CSV), diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pnmds/bench.hpp"
#include "pnmds/io.hpp"

namespace {

using namespace pnmds;
using nlohmann::json;

void warn_if_over_euler_bound(const PortGraph& g) {
    if (auto check = planarity_bound_check(g); !check.pass)
        std::cerr << "warning: graph exceeds the planar edge bound by " << check.excess
                  << " edge(s); it cannot be planar and the ratio guarantee does not apply\n";
}

int cmd_gen(const FamilySpec& spec, const std::string& out_path) {
    const PortGraph g = instantiate(spec);
    save_graph(out_path, g);
    std::cerr << "wrote " << family_name(spec.family) << " graph: n=" << g.node_count()
              << " m=" << g.edge_count() << " -> " << out_path << "\n";
    return 0;
}

int cmd_run(const std::string& graph_path, bool trace) {
    const PortGraph g = load_graph(graph_path);
    warn_if_over_euler_bound(g);
    ExecuteOptions opt;
    if (trace) {
        opt.trace = [](const TraceRecord& rec) {
            json j;
            j["round"] = rec.round;
            j["node"] = rec.node;
            j["state"] = rec.digest;
            auto sent = json::array();
            for (const auto& [port, msg] : rec.sent) {
                json m;
                m["port"] = port;
                m["tag"] = tag_name(msg.tag);
                if (msg.payload) m["payload"] = *msg.payload;
                sent.push_back(std::move(m));
            }
            j["sent"] = std::move(sent);
            std::cerr << j.dump() << "\n";
        };
    }
    const MdsResult res = run_distributed(g, opt);
    std::cout << result_to_json(res).dump() << "\n";
    if (auto check = is_dominating(g, res.d); !check.ok) {
        std::cerr << "error: output does not dominate vertex " << check.witness << "\n";
        return 1;
    }
    return 0;
}

int cmd_exact(const std::string& graph_path, std::uint64_t budget) {
    const PortGraph g = load_graph(graph_path);
    warn_if_over_euler_bound(g);
    const OracleResult res = exact_mds(g, budget);
    std::cout << oracle_to_json(res).dump() << "\n";
    if (!res.optimal) {
        std::cerr << "error: search budget exhausted after " << res.nodes_explored
                  << " nodes; result is an upper bound only\n";
        return 1;
    }
    std::cerr << "explored " << res.nodes_explored << " branch nodes\n";
    return 0;
}

int cmd_bench(const BenchPlan& plan, const std::string& csv_path) {
    BenchSummary summary;
    const auto rows = run_bench(plan, &summary);
    std::ofstream csv(csv_path);
    if (!csv) throw std::runtime_error("cannot write file: " + csv_path);
    write_csv(csv, rows);
    if (!csv.good()) throw std::runtime_error("write failed: " + csv_path);

    json j;
    j["instances"] = summary.instances;
    j["with_oracle"] = summary.with_oracle;
    if (summary.max_ratio) {
        j["max_ratio"] = format_ratio(*summary.max_ratio);
        j["ratio_bound"] = kRatioBound;
    }
    j["csv"] = csv_path;
    std::cout << j.dump() << "\n";

    if (summary.max_ratio && !summary.max_ratio->at_most(kRatioBound)) {
        std::cerr << "error: observed ratio exceeds the bound\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& graph_path, const std::string& result_path) {
    const PortGraph g = load_graph(graph_path);
    std::ifstream rf(result_path);
    if (!rf) throw std::runtime_error("cannot open result file: " + result_path);
    json j;
    rf >> j;
    const MdsResult claimed = result_from_json(j);

    auto verdict = [](bool ok, const std::string& failed = {}) {
        json v;
        v["ok"] = ok;
        if (!ok) v["failed"] = failed;
        std::cout << v.dump() << "\n";
        return ok ? 0 : 1;
    };

    if (!is_dominating(g, claimed.d).ok) return verdict(false, "domination");

    std::vector<node_t> joined;
    joined.insert(joined.end(), claimed.d1.begin(), claimed.d1.end());
    joined.insert(joined.end(), claimed.d2.begin(), claimed.d2.end());
    joined.insert(joined.end(), claimed.d3.begin(), claimed.d3.end());
    std::sort(joined.begin(), joined.end());
    const bool disjoint = std::adjacent_find(joined.begin(), joined.end()) == joined.end();
    if (!disjoint || joined != claimed.d) return verdict(false, "partition");

    const MdsResult rerun = run_distributed(g);
    if (!rerun.same_sets(claimed) ||
        rerun.stats.rounds_executed != claimed.stats.rounds_executed ||
        rerun.stats.max_message_bits != claimed.stats.max_message_bits)
        return verdict(false, "reproducibility");

    return verdict(true);
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        const std::size_t n = std::stoull(text);
        return {n, n};
    }
    const std::size_t lo = std::stoull(text.substr(0, colon));
    const std::size_t hi = std::stoull(text.substr(colon + 1));
    if (hi < lo) throw std::invalid_argument("range must be lo:hi with lo <= hi");
    return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anonymous port-numbering MDS approximation toolkit"};
    app.require_subcommand(1);

    // gen
    FamilySpec spec;
    std::string family_arg;
    std::string out_path;
    auto* gen = app.add_subcommand("gen", "generate a graph file");
    gen->add_option("--family", family_arg, "grid|cycle|star|caterpillar|shared_hub|triangulation")
        ->required();
    gen->add_option("--rows", spec.rows, "grid rows");
    gen->add_option("--cols", spec.cols, "grid cols");
    gen->add_option("--n", spec.n, "node count (cycle, triangulation)");
    gen->add_option("--k", spec.k, "leaf/client count (star, shared_hub)");
    gen->add_option("--spine", spec.spine, "caterpillar spine length");
    gen->add_option("--leaves", spec.leaves, "caterpillar leaves per hub");
    gen->add_option("--seed", spec.seed, "generator seed");
    gen->add_option("--keep-prob", spec.edge_keep_prob, "edge keep probability in (0,1]");
    gen->add_option("-o,--out", out_path, "output path (.json selects the object format)")
        ->required();

    // run
    std::string graph_path;
    bool trace = false;
    auto* run = app.add_subcommand("run", "run the 18-round protocol on a graph file");
    run->add_option("graph", graph_path, "graph file")->required();
    run->add_flag("--trace", trace, "emit per-round trace records on stderr");

    // exact
    std::string exact_graph;
    std::uint64_t budget = kDefaultOracleBudget;
    auto* exact = app.add_subcommand("exact", "exact minimum dominating set (branch and bound)");
    exact->add_option("graph", exact_graph, "graph file")->required();
    exact->add_option("--budget", budget, "branch-node budget");

    // bench
    BenchPlan plan;
    std::vector<std::string> family_names;
    std::string n_range = "3:22";
    std::string csv_path;
    auto* bench = app.add_subcommand("bench", "batch run with gates, emitting CSV");
    bench->add_option("--family", family_names, "families to include (repeatable; default all)");
    bench->add_option("--n", n_range, "target size range lo:hi");
    bench->add_option("--seed", plan.seeds, "seeds (repeatable; default 1)");
    bench->add_option("--exact-up-to", plan.exact_up_to, "invoke the oracle up to this n");
    bench->add_option("--budget", plan.oracle_budget, "oracle branch-node budget");
    bench->add_option("--csv", csv_path, "output CSV path")->required();
    bench->add_option("--jobs", plan.jobs, "parallel workers");
    bench->add_flag("--timings", plan.timings,
                    "record wall-clock runtimes (breaks byte-reproducibility)");

    // verify
    std::string verify_graph, verify_result;
    auto* verify = app.add_subcommand("verify", "re-check a result file against its graph");
    verify->add_option("graph", verify_graph, "graph file")->required();
    verify->add_option("result", verify_result, "result file from `run`")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            spec.family = family_from_name(family_arg);
            return cmd_gen(spec, out_path);
        }
        if (run->parsed()) return cmd_run(graph_path, trace);
        if (exact->parsed()) return cmd_exact(exact_graph, budget);
        if (bench->parsed()) {
            if (!family_names.empty()) {
                plan.families.clear();
                for (const auto& name : family_names)
                    plan.families.push_back(family_from_name(name));
            }
            std::tie(plan.n_min, plan.n_max) = parse_range(n_range);
            if (plan.seeds.empty()) plan.seeds = {1};
            return cmd_bench(plan, csv_path);
        }
        if (verify->parsed()) return cmd_verify(verify_graph, verify_result);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
