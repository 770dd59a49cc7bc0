#pragma once
// Population optimizer with staged learning and success-history adaptation.
//
// One iteration runs: (3.1) each elite learns from two other elites with
// fitness-directed signs, (3.2) each common member learns either from a
// randomly chosen elite (with probability LE(t), a logistic schedule) or
// from two fellow commons, (3.3) re-sort; (4) the parameter memory absorbs
// this iteration's successful (CR, F) pairs as weighted Lehmer means;
// (5) reflections — every iteration the current tail of the ranking either
// jumps to its box-opposite position (if strictly better) or is replaced by
// a fresh random member, and once the best-so-far has stagnated for
// `reset_threshold` iterations the whole population is reflected instead.
// Updates are in-place and sequential in rank order, so a seed fixes the
// entire trajectory.
//
// The non-adaptive ablation (VLA) keeps the loop but draws F uniformly from
// [0,1] per learning step, holds CR at a fixed constant, and maintains no
// parameter memory.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "vlopt/core.hpp"

namespace vlopt {

enum class Variant { Avla, Vla };

const char* variant_name(Variant v);          // "avla" / "vla"
Variant variant_from_name(const std::string&); // throws std::invalid_argument

struct AvlaConfig {
    int population = 50;        // N
    int max_iterations = 2000;
    int memory_size = 50;       // H
    int reset_threshold = 100;  // n_R, stagnation limit for the group reflection
    double gamma = 6.0;         // logistic truncation radius
    int elite_start = 3;        // elite count at t=0
    double elite_end_fraction = 0.2; // elite count reaches round(0.2 N) at the end
    Variant variant = Variant::Avla;
    double vla_cr = 0.25;       // fixed CR for the ablation

    // Type invariants: N >= 10, n_R >= 1, H >= 1, gamma > 0.
    // (run() additionally requires N >= 15 so the elite schedule stays >= 3
    // and both subgroups keep enough members for distinct partner draws.)
    void validate() const; // throws std::invalid_argument
};

struct Member {
    Vec position;
    double fitness = 0.0;
    double f = 0.5;   // learning acceptance rate, stamped per iteration
    double cr = 0.5;  // practical learning factor, stamped per iteration
};

// H-slot circular success history; all entries start at 0.5 and the write
// index k cycles 1..H, advancing only when an iteration logged successes.
struct AdaptiveMemory {
    std::vector<double> m_cr;
    std::vector<double> m_f;
    int k = 1;

    explicit AdaptiveMemory(int h) : m_cr(h, 0.5), m_f(h, 0.5) {}
    int size() const { return static_cast<int>(m_cr.size()); }
};

// Per-iteration log of accepted learning steps.
struct SuccessLog {
    std::vector<double> s_cr;
    std::vector<double> s_f;
    std::vector<double> delta_fit; // |fitness improvement|, all >= 0

    bool empty() const { return s_cr.empty(); }
    void clear();
    void record(double cr, double f, double dfit);
};

struct RunRecord {
    std::string algorithm;      // "avla" / "vla"
    std::string problem;
    std::uint64_t seed = 0;
    AvlaConfig config;
    Vec best;                   // best-so-far position
    double best_fitness = 0.0;
    std::vector<double> trace;  // best-so-far after init, then per iteration
    std::uint64_t nfe = 0;
    bool completed = true;      // false if an evaluation error aborted the run
    std::string error;          // message when !completed
};

// Mutable state threaded through one run; exposed so the reflection
// operators are testable in isolation.
struct RunState {
    std::vector<Member> population; // sorted best-first at phase boundaries
    Vec best;
    double best_fitness = 0.0;
    int nr = 0;                     // iterations since the best-so-far moved
    int t = 0;
    EvalCounter nfe;
    std::vector<double> trace;
};

// Evaluation callback: run() wires this to the problem oracle plus
// best-so-far / stagnation bookkeeping. NFE accounting lives behind it.
using EvalFn = std::function<double(const Vec&)>;

// --------------------------------------------------------------- schedules ---

// Logistic elite-imitation probability, strictly increasing in t with
// LE(maxNumIter/2) = 1/2.
double le_probability(int t, const AvlaConfig& cfg);

// Elite count: round(elite_start + t*(0.2N - elite_start)/maxNumIter),
// rounding half away from zero.
int elite_count(int t, const AvlaConfig& cfg);

// ---------------------------------------------------------------- sampling ---

// CR ~ normal(M_CR[r], 0.1) truncated into [0,1]; r uniform over slots.
double sample_cr(const AdaptiveMemory& memory, SeededRng& rng);

// F ~ Cauchy(M_F[r], 0.1); values > 1 become 1; non-positive draws repeat
// (capped at 100 attempts, then the memory value itself is returned).
double sample_f(const AdaptiveMemory& memory, SeededRng& rng);

// Absorb one iteration's log: weighted Lehmer means (weights proportional
// to fitness improvements) written at slot k, then k advances cyclically.
// An empty log leaves memory and k untouched. A zero Lehmer denominator
// (all successful CRs were 0) keeps the previous CR slot value.
void update_memory(AdaptiveMemory& memory, const SuccessLog& log);

// ---------------------------------------------------------------- learning ---

// Elite rule: v = x_e + s1*F*(x_e1 - x_e) + s2*F*(x_e2 - x_e), the signs
// chosen to step toward the better partner; then binomial crossover with a
// forced index, clamp, greedy acceptance (strict improvement only).
// Accepted steps are recorded in `log`. Returns the surviving member.
Member elite_learn(const Member& e, const Member& e1, const Member& e2,
                   const Bounds& bounds, const EvalFn& eval, SeededRng& rng,
                   SuccessLog& log);

// Common rule: with probability LE(t) learn from a random elite (unsigned
// elite term) and one fellow common; otherwise from two fellow commons with
// fitness-directed signs. Partner indices are drawn inside.
Member common_learn(const Member& i, std::size_t i_rank_in_commons,
                    const std::vector<Member>& population, int n_elites, int t,
                    const AvlaConfig& cfg, const Bounds& bounds, const EvalFn& eval,
                    SeededRng& rng, SuccessLog& log);

// Box reflection: alpha + beta - x, an involution on the box.
Vec opposite(const Vec& v, const Bounds& bounds);

// ------------------------------------------------------------- reflections ---

// Every-iteration move: each tail member (the worst elite_count(t) ranks)
// relocates to its opposite when that strictly improves it, and is replaced
// by a fresh uniform member otherwise. Each candidate is evaluated.
void tail_reflection(RunState& state, const AvlaConfig& cfg, const Bounds& bounds,
                     const EvalFn& eval, SeededRng& rng);

// Stagnation move: non-tail members keep the better of (current, opposite);
// tail members take the opposite unconditionally.
void group_reflection(RunState& state, const AvlaConfig& cfg, const Bounds& bounds,
                      const EvalFn& eval, SeededRng& rng);

// --------------------------------------------------------------------- run ---

RunRecord run(const Problem& problem, const AvlaConfig& cfg, std::uint64_t seed);

} // namespace vlopt
