// vlopt command-line front end.
//
//   vlopt solve  <benchmark-id | instance.toml> [overrides]
//   vlopt verify <instance.toml> <solution.toml> [tolerances]
//   vlopt bench  <plan.toml> [overrides]
//   vlopt rank   <stats.csv>
//
// Exit codes: 0 success, 1 runtime failure, 2 configuration error,
// 3 instance/solution validation error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vlopt/benchmarks.hpp"
#include "vlopt/harness.hpp"
#include "vlopt/scnem_io.hpp"

namespace fs = std::filesystem;
using namespace vlopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInstance = 3;

struct CommonOpts {
    std::uint64_t seed = 1;
    int runs = 1;
    int iters = -1;   // -1: keep defaults
    int pop = -1;
    int memory = -1;
    int nr = -1;
    std::string variant = "avla";
    double penalty_weight = 1e6;
    std::string out;
    std::string format = "csv";
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_runs = true) {
    cmd->add_option("--seed", o.seed, "Base seed for derived run seeds");
    if (with_runs) cmd->add_option("--runs", o.runs, "Runs per algorithm*problem cell");
    cmd->add_option("--iters", o.iters, "Learning iterations per run");
    cmd->add_option("--pop", o.pop, "Population size");
    cmd->add_option("--memory", o.memory, "Adaptive memory size");
    cmd->add_option("--nr", o.nr, "Stagnation threshold for group reflection");
    cmd->add_option("--variant", o.variant, "Algorithm variant: avla | vla");
    cmd->add_option("--penalty-weight", o.penalty_weight,
                    "Constraint-violation weight for supply-chain fitness");
    cmd->add_option("--out", o.out, "Output directory (default: $VLOPT_OUT_DIR or .)");
    cmd->add_option("--format", o.format, "Tabular output format: csv | json");
    cmd->add_option("--threads", o.threads, "Worker threads for multi-run commands");
}

AvlaConfig config_from(const CommonOpts& o) {
    AvlaConfig cfg;
    cfg.variant = variant_from_name(o.variant); // throws on bad name
    if (o.pop >= 0) cfg.population = o.pop;
    if (o.iters >= 0) cfg.max_iterations = o.iters;
    if (o.memory >= 0) cfg.memory_size = o.memory;
    if (o.nr >= 0) cfg.reset_threshold = o.nr;
    cfg.validate();
    return cfg;
}

fs::path resolve_out_dir(const CommonOpts& o) {
    std::string dir = o.out;
    if (dir.empty()) {
        if (const char* env = std::getenv("VLOPT_OUT_DIR")) dir = env;
        if (dir.empty()) dir = ".";
    }
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

bool looks_like_path(const std::string& s) {
    return s.find('/') != std::string::npos || s.find(".toml") != std::string::npos;
}

std::uint64_t noise_seed_for(std::uint64_t run_seed) {
    std::uint64_t s = run_seed ^ 0x517cc1b727220a95ULL;
    return splitmix64(s);
}

// Resolves a problem argument: a benchmark id, or a network instance file.
// Network files are loaded (and validated) eagerly; the network is shared
// by all runs.
struct ResolvedProblem {
    harness::ProblemSpec spec;
    std::shared_ptr<const scnem::SupplyChainNetwork> net; // null for benchmarks
};

ResolvedProblem resolve_problem(const std::string& input, const scnem::EvalOptions& eopts) {
    const auto& ids = bench::all_ids();
    if (std::find(ids.begin(), ids.end(), input) != ids.end()) {
        ResolvedProblem rp;
        rp.spec.name = input;
        rp.spec.make = [input](std::uint64_t run_seed) {
            return bench::make(input, noise_seed_for(run_seed));
        };
        return rp;
    }
    if (!looks_like_path(input))
        throw CLI::ValidationError("problem", "unknown benchmark id: " + input);
    ResolvedProblem rp;
    rp.net = std::make_shared<const scnem::SupplyChainNetwork>(
        scnem::load_network_file(input));
    rp.spec.name = rp.net->name;
    auto net = rp.net;
    rp.spec.make = [net, eopts](std::uint64_t) { return scnem::make_problem(*net, eopts); };
    return rp;
}

// ------------------------------------------------------------------ solve ---

int cmd_solve(const std::string& input, const CommonOpts& o) {
    const AvlaConfig cfg = config_from(o);
    scnem::EvalOptions eopts;
    eopts.penalty_weight = o.penalty_weight;

    const ResolvedProblem rp = resolve_problem(input, eopts);
    const fs::path out_dir = resolve_out_dir(o);
    const bool json = o.format == "json";

    harness::ExperimentPlan plan;
    plan.algorithms = {{variant_name(cfg.variant), cfg}};
    plan.problems = {rp.spec};
    plan.runs = std::max(1, o.runs);
    plan.base_seed = o.seed;
    plan.threads = o.threads;
    const harness::PlanResult result = harness::run_plan(plan);

    const RunRecord* best = nullptr;
    for (const RunRecord& rec : result.records)
        if (rec.completed && (!best || rec.best_fitness < best->best_fitness)) best = &rec;
    if (!best) {
        std::cerr << "all runs failed";
        if (!result.records.empty()) std::cerr << ": " << result.records.front().error;
        std::cerr << "\n";
        return kExitRuntime;
    }

    const std::string stem = rp.spec.name;
    write_file(out_dir / (stem + "_run.json"), harness::render_run_json(*best));
    if (json)
        write_file(out_dir / (stem + "_trace.json"), harness::render_trace_json({*best}));
    else
        write_file(out_dir / (stem + "_trace.csv"), harness::render_trace_csv({*best}));
    if (json)
        write_file(out_dir / (stem + "_stats.json"),
                   harness::render_stats_json(result.cells));
    else
        write_file(out_dir / (stem + "_stats.csv"),
                   harness::render_stats_csv(result.cells));

    if (rp.net) {
        const scnem::EvaluationReport rep =
            scnem::propagate(*rp.net, scnem::decode(best->best, *rp.net), eopts);
        const scnem::ViReport vi = scnem::vi_report(*rp.net, rep);
        write_file(out_dir / (stem + "_report.txt"),
                   scnem::render_verify_text(*rp.net, rep, vi));
        if (json) {
            write_file(out_dir / (stem + "_report.json"),
                       scnem::render_report_json(*rp.net, rep, vi));
        } else {
            write_file(out_dir / (stem + "_links.csv"),
                       scnem::render_link_csv(*rp.net, rep, vi));
            write_file(out_dir / (stem + "_spots.csv"),
                       scnem::render_spot_csv(*rp.net, rep));
        }
    }

    std::cout << "problem " << stem << ": best fitness " << best->best_fitness << " (seed "
              << best->seed << ", " << best->nfe << " evaluations, "
              << result.records.size() << " run(s))\n"
              << "results in " << out_dir.string() << "\n";
    return kExitOk;
}

// ----------------------------------------------------------------- verify ---

int cmd_verify(const std::string& instance, const std::string& solution,
               const CommonOpts& o, double tol, double residual_tol, double flow_tol) {
    scnem::EvalOptions eopts;
    eopts.penalty_weight = o.penalty_weight;
    const scnem::SupplyChainNetwork net = scnem::load_network_file(instance);
    const scnem::ScnemDecision d = scnem::load_solution_file(solution, net);
    const scnem::EvaluationReport rep = scnem::propagate(net, d, eopts);
    const scnem::ViReport vi = scnem::vi_report(net, rep, residual_tol, flow_tol);

    std::cout << scnem::render_verify_text(net, rep, vi);
    const bool pass = rep.objective <= tol && vi.all_pass;
    std::cout << "\nverify: " << (pass ? "PASS" : "FAIL") << " (objective "
              << rep.objective << (rep.objective <= tol ? " <= " : " > ") << tol
              << ", residuals " << (vi.all_pass ? "consistent" : "inconsistent") << ")\n";
    return pass ? kExitOk : kExitRuntime;
}

// ------------------------------------------------------------------ bench ---

int cmd_bench(const std::string& plan_path, const CommonOpts& o, bool runs_given,
              bool seed_given) {
    const TomlValue doc = [&] {
        try {
            return toml_parse_file(plan_path);
        } catch (const TomlError& e) {
            throw CLI::ValidationError("plan", e.what());
        }
    }();

    harness::ExperimentPlan plan;
    plan.runs = static_cast<int>(doc.number_or("runs", 30));
    plan.base_seed = static_cast<std::uint64_t>(doc.number_or("base_seed", 1));
    plan.threads = static_cast<int>(doc.number_or("threads", o.threads));
    if (runs_given) plan.runs = o.runs;
    if (seed_given) plan.base_seed = o.seed;

    scnem::EvalOptions eopts;
    eopts.penalty_weight = o.penalty_weight;

    // Algorithms: strings ("avla"/"vla") or tables with per-entry overrides.
    const TomlValue* algos = doc.get("algorithms");
    if (!algos || !algos->is_array() || algos->as_array().empty())
        throw CLI::ValidationError("plan", "missing algorithms list");
    for (const TomlValue& av : algos->as_array()) {
        harness::AlgorithmSpec spec;
        CommonOpts ao = o; // CLI overrides form the baseline
        if (av.kind() == TomlValue::Kind::String) {
            ao.variant = av.as_string();
            spec.name = ao.variant;
        } else {
            ao.variant = av.string_or("variant", "avla");
            spec.name = av.string_or("name", ao.variant);
            ao.pop = static_cast<int>(av.number_or("pop", ao.pop));
            ao.iters = static_cast<int>(av.number_or("iters", ao.iters));
            ao.memory = static_cast<int>(av.number_or("memory", ao.memory));
            ao.nr = static_cast<int>(av.number_or("nr", ao.nr));
        }
        spec.config = config_from(ao);
        if (const TomlValue* cr = av.is_table() ? av.get("vla_cr") : nullptr)
            spec.config.vla_cr = cr->as_number();
        plan.algorithms.push_back(std::move(spec));
    }

    // Problems: benchmark ids or instance files (relative to the plan file).
    const TomlValue* probs = doc.get("problems");
    if (!probs || !probs->is_array() || probs->as_array().empty())
        throw CLI::ValidationError("plan", "missing problems list");
    const fs::path plan_dir = fs::path(plan_path).parent_path();
    for (const std::string& p : probs->as_string_array()) {
        std::string input = p;
        if (looks_like_path(input) && !fs::path(input).is_absolute())
            input = (plan_dir / input).string();
        plan.problems.push_back(resolve_problem(input, eopts).spec);
    }

    const fs::path out_dir = resolve_out_dir(o);
    const bool json = o.format == "json";
    const harness::PlanResult result = harness::run_plan(plan);

    int failures = 0, total_cells = 0, dead_cells = 0;
    for (const harness::CellStats& c : result.cells) {
        ++total_cells;
        failures += c.failed;
        if (c.runs == 0) ++dead_cells;
        if (c.failed > 0)
            std::cerr << "warning: cell " << c.algorithm << "*" << c.problem << " had "
                      << c.failed << " failed run(s)\n";
    }

    if (json)
        write_file(out_dir / "stats.json", harness::render_stats_json(result.cells));
    else
        write_file(out_dir / "stats.csv", harness::render_stats_csv(result.cells));
    if (json)
        write_file(out_dir / "trace.json", harness::render_trace_json(result.records));
    else
        write_file(out_dir / "trace.csv", harness::render_trace_csv(result.records));
    if (json)
        write_file(out_dir / "nfe.json", [&] {
            std::string s = harness::render_nfe_csv(harness::nfe_summary(result.records));
            return s; // NFE summary is small; the CSV is kept in both modes
        }());
    else
        write_file(out_dir / "nfe.csv",
                   harness::render_nfe_csv(harness::nfe_summary(result.records)));

    if (dead_cells < total_cells) {
        try {
            const harness::RankTable table = harness::rank_from_stats(result.cells);
            if (json)
                write_file(out_dir / "rank.json", harness::render_rank_json(table));
            else
                write_file(out_dir / "rank.csv", harness::render_rank_csv(table));
        } catch (const std::invalid_argument& e) {
            std::cerr << "warning: rank table skipped: " << e.what() << "\n";
        }
    }

    std::cout << "bench: " << total_cells << " cell(s), " << result.records.size()
              << " run(s), " << failures << " failure(s); results in "
              << out_dir.string() << "\n";
    if (dead_cells == total_cells && total_cells > 0) {
        std::cerr << "all cells failed\n";
        return kExitRuntime;
    }
    return kExitOk;
}

// ------------------------------------------------------------------- rank ---

int cmd_rank(const std::string& stats_path, const CommonOpts& o) {
    std::ifstream in(stats_path);
    if (!in) throw CLI::ValidationError("stats", "cannot open " + stats_path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const std::vector<harness::CellStats> cells = [&] {
        try {
            return harness::parse_stats_csv(text);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("stats", e.what());
        }
    }();
    const harness::RankTable table = [&] {
        try {
            return harness::rank_from_stats(cells);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("stats", e.what());
        }
    }();
    const fs::path out_dir = resolve_out_dir(o);
    if (o.format == "json")
        write_file(out_dir / "rank.json", harness::render_rank_json(table));
    else
        write_file(out_dir / "rank.csv", harness::render_rank_csv(table));
    std::cout << harness::render_rank_csv(table);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"population-metaheuristic toolkit for supply-chain equilibrium and "
                 "benchmark objectives"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string input, solution, stats_path;
    double tol = 1e-2, residual_tol = 1e-2, flow_tol = 1e-2;

    CLI::App* solve = app.add_subcommand("solve", "Optimize one instance or benchmark");
    solve->add_option("input", input, "Benchmark id (F1..F29) or instance .toml")
        ->required();
    add_common(solve, o);

    CLI::App* verify =
        app.add_subcommand("verify", "Evaluate a candidate solution and its residuals");
    verify->add_option("instance", input, "Instance .toml")->required();
    verify->add_option("solution", solution, "Solution .toml")->required();
    verify->add_option("--tol", tol, "Objective pass threshold");
    verify->add_option("--residual-tol", residual_tol, "Residual classification tolerance");
    verify->add_option("--flow-tol", flow_tol, "Flow tolerance for residual cases");
    verify->add_option("--penalty-weight", o.penalty_weight,
                       "Constraint-violation weight");
    verify->add_option("--out", o.out, "Output directory (unused; report goes to stdout)");

    CLI::App* bench = app.add_subcommand("bench", "Run an experiment plan");
    bench->add_option("plan", input, "Plan .toml")->required();
    add_common(bench, o);

    CLI::App* rank = app.add_subcommand("rank", "Recompute rank tables from a stats CSV");
    rank->add_option("stats", stats_path, "stats.csv produced by bench")->required();
    rank->add_option("--out", o.out, "Output directory");
    rank->add_option("--format", o.format, "csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(solve)) return cmd_solve(input, o);
        if (app.got_subcommand(verify))
            return cmd_verify(input, solution, o, tol, residual_tol, flow_tol);
        if (app.got_subcommand(bench))
            return cmd_bench(input, o, bench->count("--runs") > 0,
                             bench->count("--seed") > 0);
        if (app.got_subcommand(rank)) return cmd_rank(stats_path, o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const TomlError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInstance;
    } catch (const scnem::NetworkError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInstance;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
