#pragma once
// The 29-function benchmark suite: unimodal F1-F7, multimodal F8-F13,
// fixed-dimension multimodal F14-F23, and composite functions F24-F29.
//
// Printed sources for several fixed-dimension functions carry well-known
// typographical artifacts; the canonical forms are implemented, with
// coefficient tables (foxholes, Kowalik, Hartmann, Shekel) embedded here.
// Composite internals follow the standard composition framework with
// identity rotation; shift optima are drawn once from a fixed seed and
// shipped as a checked-in data file (see tools/gen_composite_shifts).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "vlopt/core.hpp"

namespace vlopt::bench {

struct BenchmarkSpec {
    std::string id;          // "F1" .. "F29"
    Eigen::Index dimension;
    double lower;            // uniform box
    double upper;
    double f_min;
    bool stochastic;         // true only for F7 (additive noise)
    Vec optimum;             // documented optimum; empty for F7
};

// All 29 ids in order.
const std::vector<std::string>& all_ids();

// Static metadata for one id; throws std::invalid_argument on unknown ids.
BenchmarkSpec spec(const std::string& id);

// Build the callable problem. Deterministic functions ignore `noise_seed`;
// F7 embeds its own uniform noise stream seeded from it, so reproducing a
// run requires a fresh F7 instance with the same noise seed.
Problem make(const std::string& id, std::uint64_t noise_seed = 0xF7F7F7F7ULL);

// The three-branch penalty term used by F12/F13.
double penalized_u(double x, double a, double k, double m);

// ------------------------------------------------------------ composites ---

struct CompositeSpec {
    std::string id;                                        // "F24" .. "F29"
    std::vector<std::function<double(const Vec&)>> components; // 10 entries
    std::vector<double> sigma;                             // spread per component
    std::vector<double> lambda;                            // stretch per component
    std::vector<double> bias;                              // 100*(i-1)
    Eigen::MatrixXd shifts;                                // 10 x D, row i = o_i
    std::vector<double> f_max;                             // |f_i(5*ones/lambda_i)|
};

CompositeSpec make_composite_spec(const std::string& id);
double evaluate_composite(const CompositeSpec& spec, const Vec& x);

// Shift-data plumbing. The seed is a fixed project constant so the data
// file is reproducible; the checked-in file and the generator must agree
// byte for byte (enforced by a test).
inline constexpr std::uint64_t kCompositeShiftSeed = 20260817ULL;
Eigen::MatrixXd generate_composite_shifts();               // (6*10) x 10
std::string render_shift_csv(const Eigen::MatrixXd& shifts);
Eigen::MatrixXd load_shift_csv(const std::string& path);

} // namespace vlopt::bench
