#include "vlopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "vlopt/rng.hpp"

namespace vlopt::harness {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Average-tie competition ranks (1-based; smaller value = better rank).
std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& algorithm,
                          const std::string& problem, int run) {
    const std::string key = algorithm + "|" + problem + "|" + std::to_string(run) + "|" +
                            std::to_string(base_seed);
    return fnv1a64(key.data(), key.size());
}

PlanResult run_plan(const ExperimentPlan& plan) {
    if (plan.runs < 1) throw std::invalid_argument("plan: runs must be >= 1");
    for (const AlgorithmSpec& a : plan.algorithms) a.config.validate();

    struct Job {
        std::size_t ai, pi;
        int run;
    };
    std::vector<Job> jobs;
    for (std::size_t ai = 0; ai < plan.algorithms.size(); ++ai)
        for (std::size_t pi = 0; pi < plan.problems.size(); ++pi)
            for (int r = 0; r < plan.runs; ++r) jobs.push_back({ai, pi, r});

    PlanResult result;
    result.records.resize(jobs.size());

    const auto do_job = [&](std::size_t j) {
        const Job& job = jobs[j];
        const AlgorithmSpec& algo = plan.algorithms[job.ai];
        const ProblemSpec& prob = plan.problems[job.pi];
        const std::uint64_t seed = derive_seed(plan.base_seed, algo.name, prob.name, job.run);
        RunRecord rec;
        try {
            const Problem p = prob.make(seed);
            rec = run(p, algo.config, seed);
        } catch (const std::exception& e) {
            rec.config = algo.config;
            rec.seed = seed;
            rec.completed = false;
            rec.error = e.what();
            rec.best_fitness = std::numeric_limits<double>::quiet_NaN();
        }
        rec.algorithm = algo.name;
        rec.problem = prob.name;
        result.records[j] = std::move(rec);
    };

    const int threads = std::max(1, plan.threads);
    if (threads == 1 || jobs.size() <= 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) do_job(j);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int nt = std::min<std::size_t>(threads, jobs.size());
        pool.reserve(nt);
        for (int t = 0; t < nt; ++t)
            pool.emplace_back([&] {
                for (std::size_t j = next.fetch_add(1); j < jobs.size();
                     j = next.fetch_add(1))
                    do_job(j);
            });
        for (std::thread& t : pool) t.join();
    }

    // Aggregate cells in plan order (independent of execution order).
    for (std::size_t ai = 0; ai < plan.algorithms.size(); ++ai) {
        for (std::size_t pi = 0; pi < plan.problems.size(); ++pi) {
            CellStats cell;
            cell.algorithm = plan.algorithms[ai].name;
            cell.problem = plan.problems[pi].name;
            for (int r = 0; r < plan.runs; ++r) {
                const std::size_t j =
                    (ai * plan.problems.size() + pi) * static_cast<std::size_t>(plan.runs) +
                    static_cast<std::size_t>(r);
                const RunRecord& rec = result.records[j];
                if (!rec.completed) {
                    ++cell.failed;
                    continue;
                }
                cell.finals.push_back(rec.best_fitness);
                cell.nfes.push_back(rec.nfe);
            }
            cell.runs = static_cast<int>(cell.finals.size());
            if (cell.runs > 0) {
                double sum = 0.0;
                cell.best = cell.finals.front();
                for (double f : cell.finals) {
                    sum += f;
                    cell.best = std::min(cell.best, f);
                }
                cell.mean = sum / cell.runs;
                double ss = 0.0;
                for (double f : cell.finals) ss += (f - cell.mean) * (f - cell.mean);
                cell.std_dev = std::sqrt(ss / cell.runs);
                double nfe_sum = 0.0;
                for (std::uint64_t n : cell.nfes) nfe_sum += static_cast<double>(n);
                cell.mean_nfe = nfe_sum / cell.runs;
            } else {
                cell.mean = cell.std_dev = cell.best = cell.mean_nfe =
                    std::numeric_limits<double>::quiet_NaN();
            }
            result.cells.push_back(std::move(cell));
        }
    }
    return result;
}

FriedmanResult friedman(const Eigen::MatrixXd& values) {
    const auto A = values.rows();
    const auto P = values.cols();
    if (A < 1) throw std::invalid_argument("friedman: no algorithms");
    if (P < 1) throw std::invalid_argument("friedman: no problems");
    for (Eigen::Index a = 0; a < A; ++a)
        for (Eigen::Index p = 0; p < P; ++p)
            if (std::isnan(values(a, p))) {
                std::ostringstream os;
                os << "friedman: NaN cell at algorithm " << a << ", problem " << p;
                throw std::invalid_argument(os.str());
            }

    std::vector<double> rank_sum(static_cast<std::size_t>(A), 0.0);
    std::vector<double> column(static_cast<std::size_t>(A));
    for (Eigen::Index p = 0; p < P; ++p) {
        for (Eigen::Index a = 0; a < A; ++a) column[static_cast<std::size_t>(a)] = values(a, p);
        const std::vector<double> ranks = average_ranks(column);
        for (Eigen::Index a = 0; a < A; ++a)
            rank_sum[static_cast<std::size_t>(a)] += ranks[static_cast<std::size_t>(a)];
    }

    FriedmanResult out;
    const double denom = static_cast<double>(P) * static_cast<double>(A) *
                         (static_cast<double>(A) + 1.0) / 2.0;
    out.fm.resize(rank_sum.size());
    for (std::size_t a = 0; a < rank_sum.size(); ++a) out.fm[a] = rank_sum[a] / denom;
    out.fmr = average_ranks(out.fm);
    return out;
}

RankTable rank_from_stats(const std::vector<CellStats>& cells) {
    RankTable table;
    std::vector<std::string> problems;
    for (const CellStats& c : cells) {
        if (std::find(table.algorithms.begin(), table.algorithms.end(), c.algorithm) ==
            table.algorithms.end())
            table.algorithms.push_back(c.algorithm);
        if (std::find(problems.begin(), problems.end(), c.problem) == problems.end())
            problems.push_back(c.problem);
    }
    if (table.algorithms.empty()) return table;

    const auto A = static_cast<Eigen::Index>(table.algorithms.size());
    const auto P = static_cast<Eigen::Index>(problems.size());
    Eigen::MatrixXd aves = Eigen::MatrixXd::Constant(A, P, std::numeric_limits<double>::quiet_NaN());
    Eigen::MatrixXd bests = aves;
    for (const CellStats& c : cells) {
        const auto a = static_cast<Eigen::Index>(
            std::find(table.algorithms.begin(), table.algorithms.end(), c.algorithm) -
            table.algorithms.begin());
        const auto p = static_cast<Eigen::Index>(
            std::find(problems.begin(), problems.end(), c.problem) - problems.begin());
        aves(a, p) = c.mean;
        bests(a, p) = c.best;
    }

    std::string missing, nan_cells;
    for (Eigen::Index a = 0; a < A; ++a)
        for (Eigen::Index p = 0; p < P; ++p) {
            const std::string cell_name = table.algorithms[static_cast<std::size_t>(a)] +
                                          "*" + problems[static_cast<std::size_t>(p)];
            bool seen = false;
            for (const CellStats& c : cells)
                if (c.algorithm == table.algorithms[static_cast<std::size_t>(a)] &&
                    c.problem == problems[static_cast<std::size_t>(p)])
                    seen = true;
            if (!seen)
                missing += (missing.empty() ? "" : ", ") + cell_name;
            else if (std::isnan(aves(a, p)) || std::isnan(bests(a, p)))
                nan_cells += (nan_cells.empty() ? "" : ", ") + cell_name;
        }
    if (!missing.empty())
        throw std::invalid_argument("rank: missing cells: " + missing);
    if (!nan_cells.empty())
        throw std::invalid_argument("rank: NaN cells: " + nan_cells);

    const FriedmanResult fa = friedman(aves);
    const FriedmanResult fb = friedman(bests);
    table.fm_aves = fa.fm;
    table.fmr_aves = fa.fmr;
    table.fm_bests = fb.fm;
    table.fmr_bests = fb.fmr;
    return table;
}

std::string render_trace_csv(const std::vector<RunRecord>& records) {
    std::ostringstream os;
    os << "algorithm,problem,seed,iteration,best\n";
    for (const RunRecord& rec : records)
        for (std::size_t i = 0; i < rec.trace.size(); ++i)
            os << rec.algorithm << ',' << rec.problem << ',' << rec.seed << ',' << i << ','
               << fmt17(rec.trace[i]) << '\n';
    return os.str();
}

std::string render_trace_json(const std::vector<RunRecord>& records) {
    nlohmann::json rows = nlohmann::json::array();
    for (const RunRecord& rec : records)
        for (std::size_t i = 0; i < rec.trace.size(); ++i)
            rows.push_back({{"algorithm", rec.algorithm},
                            {"problem", rec.problem},
                            {"seed", rec.seed},
                            {"iteration", i},
                            {"best", rec.trace[i]}});
    return rows.dump(2) + "\n";
}

std::vector<NfeSummaryRow> nfe_summary(const std::vector<RunRecord>& records) {
    std::vector<NfeSummaryRow> rows;
    for (const RunRecord& rec : records) {
        if (!rec.completed) continue;
        NfeSummaryRow* row = nullptr;
        for (NfeSummaryRow& r : rows)
            if (r.algorithm == rec.algorithm && r.problem == rec.problem) row = &r;
        if (!row) {
            rows.push_back({rec.algorithm, rec.problem, 0.0, 0});
            row = &rows.back();
        }
        row->mean_nfe += static_cast<double>(rec.nfe);
        row->runs += 1;
    }
    for (NfeSummaryRow& r : rows)
        if (r.runs > 0) r.mean_nfe /= r.runs;
    return rows;
}

std::string render_nfe_csv(const std::vector<NfeSummaryRow>& rows) {
    std::ostringstream os;
    os << "algorithm,problem,mean_nfe,runs\n";
    for (const NfeSummaryRow& r : rows)
        os << r.algorithm << ',' << r.problem << ',' << fmt17(r.mean_nfe) << ',' << r.runs
           << '\n';
    return os.str();
}

std::string render_stats_csv(const std::vector<CellStats>& cells) {
    std::ostringstream os;
    os << "algorithm,problem,mean,std,best,runs,mean_nfe\n";
    for (const CellStats& c : cells)
        os << c.algorithm << ',' << c.problem << ',' << fmt17(c.mean) << ','
           << fmt17(c.std_dev) << ',' << fmt17(c.best) << ',' << c.runs << ','
           << fmt17(c.mean_nfe) << '\n';
    return os.str();
}

std::string render_stats_json(const std::vector<CellStats>& cells) {
    nlohmann::json rows = nlohmann::json::array();
    for (const CellStats& c : cells)
        rows.push_back({{"algorithm", c.algorithm},
                        {"problem", c.problem},
                        {"mean", c.mean},
                        {"std", c.std_dev},
                        {"best", c.best},
                        {"runs", c.runs},
                        {"failed", c.failed},
                        {"mean_nfe", c.mean_nfe},
                        {"finals", c.finals},
                        {"nfes", c.nfes}});
    return rows.dump(2) + "\n";
}

std::vector<CellStats> parse_stats_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("stats csv: empty document");

    const auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = s.find(',', start);
            out.push_back(s.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return out;
    };

    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split(line);
    const auto column = [&](const char* name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::invalid_argument(std::string("stats csv: missing column ") + name);
    };
    const std::size_t c_alg = column("algorithm"), c_prob = column("problem"),
                      c_mean = column("mean"), c_std = column("std"),
                      c_best = column("best"), c_runs = column("runs"),
                      c_nfe = column("mean_nfe");

    std::vector<CellStats> cells;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> f = split(line);
        if (f.size() < header.size())
            throw std::invalid_argument("stats csv: short row at line " +
                                        std::to_string(lineno));
        CellStats c;
        c.algorithm = f[c_alg];
        c.problem = f[c_prob];
        c.mean = std::strtod(f[c_mean].c_str(), nullptr);
        c.std_dev = std::strtod(f[c_std].c_str(), nullptr);
        c.best = std::strtod(f[c_best].c_str(), nullptr);
        c.runs = std::atoi(f[c_runs].c_str());
        c.mean_nfe = std::strtod(f[c_nfe].c_str(), nullptr);
        cells.push_back(std::move(c));
    }
    return cells;
}

std::string render_rank_csv(const RankTable& table) {
    std::ostringstream os;
    os << "algorithm,fm_aves,fmr_aves,fm_bests,fmr_bests\n";
    for (std::size_t a = 0; a < table.algorithms.size(); ++a)
        os << table.algorithms[a] << ',' << fmt17(table.fm_aves[a]) << ','
           << fmt17(table.fmr_aves[a]) << ',' << fmt17(table.fm_bests[a]) << ','
           << fmt17(table.fmr_bests[a]) << '\n';
    return os.str();
}

std::string render_rank_json(const RankTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t a = 0; a < table.algorithms.size(); ++a)
        rows.push_back({{"algorithm", table.algorithms[a]},
                        {"fm_aves", table.fm_aves[a]},
                        {"fmr_aves", table.fmr_aves[a]},
                        {"fm_bests", table.fm_bests[a]},
                        {"fmr_bests", table.fmr_bests[a]}});
    nlohmann::json j;
    j["tie_handling"] = "average-rank competition ranking per problem";
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string render_run_json(const RunRecord& record) {
    nlohmann::json j;
    j["algorithm"] = record.algorithm;
    j["problem"] = record.problem;
    j["seed"] = record.seed;
    j["config"] = {{"population", record.config.population},
                   {"max_iterations", record.config.max_iterations},
                   {"memory_size", record.config.memory_size},
                   {"reset_threshold", record.config.reset_threshold},
                   {"gamma", record.config.gamma},
                   {"variant", variant_name(record.config.variant)},
                   {"vla_cr", record.config.vla_cr}};
    j["best_fitness"] = record.best_fitness;
    std::vector<double> best(record.best.data(), record.best.data() + record.best.size());
    j["best"] = best;
    j["nfe"] = record.nfe;
    j["trace_length"] = record.trace.size();
    j["completed"] = record.completed;
    if (!record.error.empty()) j["error"] = record.error;
    return j.dump(2) + "\n";
}

} // namespace vlopt::harness
