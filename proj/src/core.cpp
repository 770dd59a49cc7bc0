#include "vlopt/core.hpp"

#include <cmath>

namespace vlopt {

Vec uniform_init(const Bounds& bounds, SeededRng& rng) {
    const Eigen::Index d = bounds.dim();
    Vec out(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        out[j] = bounds.lower[j] + rng.uniform() * (bounds.upper[j] - bounds.lower[j]);
    }
    return out;
}

Vec clamp(const Vec& v, const Bounds& bounds) {
    if (v.size() != bounds.dim()) {
        throw std::invalid_argument("clamp: vector length " + std::to_string(v.size()) +
                                    " does not match bounds length " +
                                    std::to_string(bounds.dim()));
    }
    return v.max(bounds.lower).min(bounds.upper);
}

double evaluate(const Problem& problem, const Vec& v, EvalCounter& nfe) {
    const double f = problem.fitness(v);
    ++nfe.count;
    if (!std::isfinite(f)) {
        throw EvaluationError("evaluate: non-finite fitness from problem '" +
                                  problem.name + "'",
                              v);
    }
    return f;
}

} // namespace vlopt
