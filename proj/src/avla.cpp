#include "vlopt/avla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vlopt {

const char* variant_name(Variant v) { return v == Variant::Avla ? "avla" : "vla"; }

Variant variant_from_name(const std::string& name) {
    if (name == "avla") return Variant::Avla;
    if (name == "vla") return Variant::Vla;
    throw std::invalid_argument("unknown variant: " + name + " (expected avla|vla)");
}

void AvlaConfig::validate() const {
    if (population < 10) throw std::invalid_argument("population must be >= 10");
    if (max_iterations < 0) throw std::invalid_argument("max_iterations must be >= 0");
    if (memory_size < 1) throw std::invalid_argument("memory_size must be >= 1");
    if (reset_threshold < 1) throw std::invalid_argument("reset_threshold must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (elite_start < 1) throw std::invalid_argument("elite_start must be >= 1");
    if (!(elite_end_fraction > 0.0) || elite_end_fraction > 1.0)
        throw std::invalid_argument("elite_end_fraction must be in (0, 1]");
    if (vla_cr < 0.0 || vla_cr > 1.0)
        throw std::invalid_argument("vla_cr must be in [0, 1]");
}

void SuccessLog::clear() {
    s_cr.clear();
    s_f.clear();
    delta_fit.clear();
}

void SuccessLog::record(double cr, double f, double dfit) {
    s_cr.push_back(cr);
    s_f.push_back(f);
    delta_fit.push_back(dfit);
}

// --------------------------------------------------------------- schedules ---

double le_probability(int t, const AvlaConfig& cfg) {
    if (cfg.max_iterations <= 0) return 0.5; // degenerate run; never consulted
    const double T = static_cast<double>(cfg.max_iterations);
    return 1.0 / (1.0 + std::exp((2.0 * cfg.gamma / T) * (T / 2.0 - t)));
}

int elite_count(int t, const AvlaConfig& cfg) {
    if (cfg.max_iterations <= 0) return cfg.elite_start;
    const double target = cfg.elite_end_fraction * cfg.population;
    const double x = cfg.elite_start +
                     t * (target - cfg.elite_start) / cfg.max_iterations;
    return static_cast<int>(std::llround(x)); // half away from zero
}

// ---------------------------------------------------------------- sampling ---

double sample_cr(const AdaptiveMemory& memory, SeededRng& rng) {
    const std::size_t r = rng.index(memory.m_cr.size());
    const double v = rng.normal(memory.m_cr[r], 0.1);
    return std::min(1.0, std::max(0.0, v));
}

double sample_f(const AdaptiveMemory& memory, SeededRng& rng) {
    const std::size_t r = rng.index(memory.m_f.size());
    for (int attempt = 0; attempt < 100; ++attempt) {
        const double v = rng.cauchy(memory.m_f[r], 0.1);
        if (v > 1.0) return 1.0;
        if (v > 0.0) return v;
    }
    return memory.m_f[r]; // documented fallback after 100 non-positive draws
}

void update_memory(AdaptiveMemory& memory, const SuccessLog& log) {
    if (log.empty()) return; // memory unchanged, slot not advanced

    double wsum = 0.0;
    for (double d : log.delta_fit) wsum += d;

    double cr_num = 0.0, cr_den = 0.0, f_num = 0.0, f_den = 0.0;
    const std::size_t n = log.s_cr.size();
    for (std::size_t i = 0; i < n; ++i) {
        // Weights proportional to fitness improvement; uniform if the log
        // carries only zero improvements (possible only in hand-built logs).
        const double w = wsum > 0.0 ? log.delta_fit[i] / wsum : 1.0 / n;
        cr_num += w * log.s_cr[i] * log.s_cr[i];
        cr_den += w * log.s_cr[i];
        f_num += w * log.s_f[i] * log.s_f[i];
        f_den += w * log.s_f[i];
    }

    const int slot = memory.k - 1;
    if (cr_den > 0.0) memory.m_cr[slot] = cr_num / cr_den; // else keep old value
    if (f_den > 0.0) memory.m_f[slot] = f_num / f_den;
    memory.k = (memory.k % memory.size()) + 1;
}

// ---------------------------------------------------------------- learning ---

namespace {

// Uniform index over [0,n) excluding a.
std::size_t draw_excluding(SeededRng& rng, std::size_t n, std::size_t a) {
    std::size_t idx = rng.index(n - 1);
    if (idx >= a) ++idx;
    return idx;
}

// Uniform index over [0,n) excluding distinct a and b.
std::size_t draw_excluding2(SeededRng& rng, std::size_t n, std::size_t a,
                            std::size_t b) {
    if (a > b) std::swap(a, b);
    std::size_t idx = rng.index(n - 2);
    if (idx >= a) ++idx;
    if (idx >= b) ++idx;
    return idx;
}

// Shared tail of both learning rules: binomial crossover of the ideal
// vector into the current position (one forced index), clamp to the box,
// evaluate, keep only a strict improvement, and log it.
Member learn_step(const Member& base, const Vec& ideal, const Bounds& bounds,
                  const EvalFn& eval, SeededRng& rng, SuccessLog& log) {
    const Eigen::Index d = base.position.size();
    const auto j_rand = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(d)));
    Vec trial(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        const double r = rng.uniform();
        trial[j] = (r <= base.cr || j == j_rand) ? ideal[j] : base.position[j];
    }
    trial = clamp(trial, bounds);
    const double ft = eval(trial);
    if (ft < base.fitness) {
        log.record(base.cr, base.f, base.fitness - ft);
        Member out = base;
        out.position = std::move(trial);
        out.fitness = ft;
        return out;
    }
    return base;
}

} // namespace

Member elite_learn(const Member& e, const Member& e1, const Member& e2,
                   const Bounds& bounds, const EvalFn& eval, SeededRng& rng,
                   SuccessLog& log) {
    // Step toward a better partner, away from a worse one.
    const double s1 = (e.fitness > e1.fitness) ? 1.0 : -1.0;
    const double s2 = (e.fitness > e2.fitness) ? 1.0 : -1.0;
    const Vec ideal = e.position + s1 * e.f * (e1.position - e.position) +
                      s2 * e.f * (e2.position - e.position);
    return learn_step(e, ideal, bounds, eval, rng, log);
}

Member common_learn(const Member& i, std::size_t i_rank_in_commons,
                    const std::vector<Member>& population, int n_elites, int t,
                    const AvlaConfig& cfg, const Bounds& bounds, const EvalFn& eval,
                    SeededRng& rng, SuccessLog& log) {
    const std::size_t n_commons = population.size() - static_cast<std::size_t>(n_elites);
    Vec ideal;
    if (rng.uniform() > le_probability(t, cfg)) {
        // Learn from two fellow commons, signs directed by fitness.
        const std::size_t r1 = draw_excluding(rng, n_commons, i_rank_in_commons);
        const std::size_t r2 = draw_excluding2(rng, n_commons, i_rank_in_commons, r1);
        const Member& p1 = population[n_elites + r1];
        const Member& p2 = population[n_elites + r2];
        const double s1 = (i.fitness > p1.fitness) ? 1.0 : -1.0;
        const double s2 = (i.fitness > p2.fitness) ? 1.0 : -1.0;
        ideal = i.position + s1 * i.f * (p1.position - i.position) +
                s2 * i.f * (p2.position - i.position);
    } else {
        // Imitate a random elite (no sign flip on the elite term) plus one
        // signed fellow-common difference.
        const Member& e = population[rng.index(static_cast<std::size_t>(n_elites))];
        const std::size_t r2 = draw_excluding(rng, n_commons, i_rank_in_commons);
        const Member& p2 = population[n_elites + r2];
        const double s2 = (i.fitness > p2.fitness) ? 1.0 : -1.0;
        ideal = i.position + i.f * (e.position - i.position) +
                s2 * i.f * (p2.position - i.position);
    }
    return learn_step(i, ideal, bounds, eval, rng, log);
}

Vec opposite(const Vec& v, const Bounds& bounds) {
    return bounds.lower + bounds.upper - v;
}

// ------------------------------------------------------------- reflections ---

namespace {
void sort_population(std::vector<Member>& population) {
    std::stable_sort(population.begin(), population.end(),
                     [](const Member& a, const Member& b) { return a.fitness < b.fitness; });
}
} // namespace

void tail_reflection(RunState& state, const AvlaConfig& cfg, const Bounds& bounds,
                     const EvalFn& eval, SeededRng& rng) {
    const int n = static_cast<int>(state.population.size());
    const int tail = std::min(n, elite_count(state.t, cfg));
    for (int r = n - tail; r < n; ++r) {
        Member& m = state.population[r];
        Vec opp = opposite(m.position, bounds);
        const double fo = eval(opp);
        if (fo < m.fitness) {
            m.position = std::move(opp);
            m.fitness = fo;
        } else {
            m.position = uniform_init(bounds, rng);
            m.fitness = eval(m.position);
        }
    }
}

void group_reflection(RunState& state, const AvlaConfig& cfg, const Bounds& bounds,
                      const EvalFn& eval, SeededRng& rng) {
    (void)rng; // same operator signature as tail_reflection; no fresh draws
    state.nr = 0;
    const int n = static_cast<int>(state.population.size());
    const int tail_from = n - std::min(n, elite_count(state.t, cfg));
    for (int r = 0; r < n; ++r) {
        Member& m = state.population[r];
        Vec opp = opposite(m.position, bounds);
        const double fo = eval(opp);
        // Tail ranks move unconditionally; the rest keep the better position.
        if (r >= tail_from || fo < m.fitness) {
            m.position = std::move(opp);
            m.fitness = fo;
        }
    }
}

// --------------------------------------------------------------------- run ---

RunRecord run(const Problem& problem, const AvlaConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    if (problem.dimension <= 0)
        throw std::invalid_argument("run: problem dimension must be positive");
    if (!problem.bounds.valid() || problem.bounds.dim() != problem.dimension)
        throw std::invalid_argument("run: problem bounds are invalid");
    if (cfg.population < 15)
        throw std::invalid_argument(
            "run: population must be >= 15 (keeps the elite schedule >= 3 and "
            "both subgroups large enough for distinct partner draws)");

    RunRecord rec;
    rec.algorithm = variant_name(cfg.variant);
    rec.problem = problem.name;
    rec.seed = seed;
    rec.config = cfg;

    const Bounds& bounds = problem.bounds;
    SeededRng rng(seed);
    RunState st;
    st.best_fitness = std::numeric_limits<double>::infinity();

    // Every evaluation flows through this hook: it counts NFE, tracks the
    // best-so-far pair, and clears the stagnation counter on improvement.
    const EvalFn eval = [&](const Vec& v) -> double {
        const double f = evaluate(problem, v, st.nfe);
        if (f < st.best_fitness) {
            st.best_fitness = f;
            st.best = v;
            st.nr = 0;
        }
        return f;
    };

    AdaptiveMemory memory(cfg.memory_size);
    SuccessLog log;

    const auto stamp = [&](Member& m) {
        if (cfg.variant == Variant::Avla) {
            m.cr = sample_cr(memory, rng);
            m.f = sample_f(memory, rng);
        } else {
            m.cr = cfg.vla_cr;
            m.f = rng.uniform();
        }
    };

    try {
        // Step 2: random initial population, evaluated and ranked.
        st.population.reserve(cfg.population);
        for (int i = 0; i < cfg.population; ++i) {
            Member m;
            m.position = uniform_init(bounds, rng);
            m.fitness = eval(m.position);
            st.population.push_back(std::move(m));
        }
        sort_population(st.population);
        st.trace.push_back(st.best_fitness);

        for (st.t = 1; st.t <= cfg.max_iterations; ++st.t) {
            log.clear();
            const int ne = elite_count(st.t, cfg);

            // Step 3.1: elites learn in rank order with immediate updates;
            // partners are two distinct other elites at live values.
            for (int e = 0; e < ne; ++e) {
                stamp(st.population[e]);
                const auto a = draw_excluding(rng, ne, static_cast<std::size_t>(e));
                const auto b =
                    draw_excluding2(rng, ne, static_cast<std::size_t>(e), a);
                st.population[e] = elite_learn(st.population[e], st.population[a],
                                               st.population[b], bounds, eval, rng, log);
            }
            // Step 3.2: commons learn (elite-guided or peer-guided).
            for (int i = ne; i < cfg.population; ++i) {
                stamp(st.population[i]);
                st.population[i] = common_learn(
                    st.population[i], static_cast<std::size_t>(i - ne), st.population,
                    ne, st.t, cfg, bounds, eval, rng, log);
            }
            // Step 3.3: re-rank.
            sort_population(st.population);

            // Step 4: absorb this iteration's successes (adaptive variant).
            if (cfg.variant == Variant::Avla) update_memory(memory, log);

            // Step 5: group reflection once stagnation hits the threshold,
            // tail reflection otherwise; then re-rank.
            if (st.nr == cfg.reset_threshold) {
                group_reflection(st, cfg, bounds, eval, rng);
            } else {
                ++st.nr;
                tail_reflection(st, cfg, bounds, eval, rng);
            }
            sort_population(st.population);

            st.trace.push_back(st.best_fitness);
        }
    } catch (const EvaluationError& err) {
        rec.completed = false;
        rec.error = err.what();
    }

    rec.best = st.best;
    rec.best_fitness = st.best_fitness;
    rec.trace = std::move(st.trace);
    rec.nfe = st.nfe.count;
    return rec;
}

} // namespace vlopt
