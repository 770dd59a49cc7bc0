#pragma once

// Experiment execution and analysis: multi-seed runs over algorithm *
// problem grids, mean/std/best aggregation, Friedman mean and mean-rank
// tables, convergence-trace export, and NFE accounting.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vlopt/avla.hpp"

namespace vlopt::harness {

// A problem is instantiated per run so stochastic objectives can derive
// their embedded noise stream from the run seed.
struct ProblemSpec {
    std::string name;
    std::function<Problem(std::uint64_t run_seed)> make;
};

struct AlgorithmSpec {
    std::string name; // defaults to the variant name when built by the CLI
    AvlaConfig config;
};

struct ExperimentPlan {
    std::vector<AlgorithmSpec> algorithms;
    std::vector<ProblemSpec> problems;
    int runs = 30;
    std::uint64_t base_seed = 1;
    int threads = 1; // runs are independent; results do not depend on this
};

struct CellStats {
    std::string algorithm;
    std::string problem;
    double mean = 0.0;
    double std_dev = 0.0; // population formula (divide by n)
    double best = 0.0;
    int runs = 0;   // completed runs aggregated here
    int failed = 0; // cell is partial when nonzero
    double mean_nfe = 0.0;
    std::vector<double> finals;
    std::vector<std::uint64_t> nfes;
};

struct PlanResult {
    std::vector<RunRecord> records; // algorithm-major, then problem, then run
    std::vector<CellStats> cells;
};

// Stable per-run seed: a 64-bit FNV-1a hash of "algorithm|problem|run|base".
std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& algorithm,
                          const std::string& problem, int run);

// Executes every (algorithm, problem, run) cell. Failures of individual
// runs are recorded on the RunRecord and counted on the cell.
PlanResult run_plan(const ExperimentPlan& plan);

// Friedman analysis of a values matrix (rows = algorithms, columns =
// problems; smaller is better). Per-problem average-tie competition ranks;
// fm = rank sum / (P * A * (A+1) / 2), which sums to 1 across algorithms;
// fmr = average-tie ordinal rank of fm. NaN cells are rejected.
struct FriedmanResult {
    std::vector<double> fm;
    std::vector<double> fmr;
};
FriedmanResult friedman(const Eigen::MatrixXd& values);

// Rank table over both aggregates, built from a complete stats grid.
struct RankTable {
    std::vector<std::string> algorithms;
    std::vector<double> fm_aves, fmr_aves, fm_bests, fmr_bests;
};
// Throws std::invalid_argument listing missing algorithm*problem cells or
// naming NaN cells.
RankTable rank_from_stats(const std::vector<CellStats>& cells);

// Long-format convergence traces: algorithm,problem,seed,iteration,best.
std::string render_trace_csv(const std::vector<RunRecord>& records);
std::string render_trace_json(const std::vector<RunRecord>& records);

// Mean NFE per algorithm*problem.
struct NfeSummaryRow {
    std::string algorithm;
    std::string problem;
    double mean_nfe = 0.0;
    int runs = 0;
};
std::vector<NfeSummaryRow> nfe_summary(const std::vector<RunRecord>& records);
std::string render_nfe_csv(const std::vector<NfeSummaryRow>& rows);

// Stats and rank serialization.
std::string render_stats_csv(const std::vector<CellStats>& cells);
std::string render_stats_json(const std::vector<CellStats>& cells);
std::vector<CellStats> parse_stats_csv(const std::string& text);
std::string render_rank_csv(const RankTable& table);
std::string render_rank_json(const RankTable& table);

// Single-run record (configuration, best vector, trace length, NFE).
std::string render_run_json(const RunRecord& record);

} // namespace vlopt::harness
