#pragma once
// Shared primitives: bounded decision vectors, the black-box problem
// abstraction, and evaluation bookkeeping used by every other module.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "vlopt/rng.hpp"

namespace vlopt {

// Decision vectors are plain dense double arrays; all element-wise algebra
// in the learning operators runs through Eigen array expressions.
using Vec = Eigen::ArrayXd;

// Per-element box [lower_j, upper_j].
struct Bounds {
    Vec lower;
    Vec upper;

    Eigen::Index dim() const { return lower.size(); }
    bool valid() const {
        return lower.size() == upper.size() && (lower <= upper).all();
    }
    bool contains(const Vec& v) const {
        return v.size() == lower.size() && (v >= lower).all() && (v <= upper).all();
    }

    static Bounds uniform_box(Eigen::Index d, double lo, double hi) {
        return Bounds{Vec::Constant(d, lo), Vec::Constant(d, hi)};
    }
};

// Counts fitness evaluations consumed by a run. Single-owner per run.
struct EvalCounter {
    std::uint64_t count = 0;
};

// Raised when a fitness oracle returns a non-finite value; carries the
// offending vector for diagnosis.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(std::string what, Vec offending)
        : std::runtime_error(std::move(what)), vector(std::move(offending)) {}
    Vec vector;
};

// A black-box minimization problem. `fitness` must be deterministic for a
// fixed vector unless `stochastic` is set (the quartic-with-noise benchmark
// embeds its own noise stream; reproducibility then requires a fresh
// problem instance per run, seeded from the run seed).
struct Problem {
    std::string name;
    Eigen::Index dimension = 0;
    Bounds bounds;
    std::function<double(const Vec&)> fitness;
    bool stochastic = false;
};

// Uniform point in the box: element_j = lower_j + u * (upper_j - lower_j),
// one uniform draw per element, in element order.
Vec uniform_init(const Bounds& bounds, SeededRng& rng);

// Project each element onto its interval; in-range elements unchanged.
// Throws std::invalid_argument on length mismatch.
Vec clamp(const Vec& v, const Bounds& bounds);

// Evaluate the problem's fitness at v, incrementing the counter by exactly
// one. Non-finite results raise EvaluationError with the vector attached.
double evaluate(const Problem& problem, const Vec& v, EvalCounter& nfe);

} // namespace vlopt
