#pragma once
// Seeded random number generation with a fully specified algorithm.
//
// The engine is xoshiro256++ seeded through splitmix64, and every
// distribution below is implemented directly on top of the raw 64-bit
// stream (uniform via 53-bit mantissa scaling, normal via Box-Muller,
// Cauchy via inverse CDF, bounded integers via 128-bit multiply-shift).
// Standard-library distributions are deliberately not used: their exact
// output is implementation-defined, and runs here must be bit-reproducible
// from a seed across platforms and standard libraries.

#include <array>
#include <cstdint>

namespace vlopt {

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    // Raw xoshiro256++ output.
    std::uint64_t next_u64();

    // Uniform on [0, 1): top 53 bits scaled by 2^-53.
    double uniform();

    // Uniform on [lo, hi): lo + u * (hi - lo).
    double uniform(double lo, double hi);

    // Normal(mu, sigma) via Box-Muller. Each call consumes exactly two
    // uniforms (no caching), so the stream layout is call-count stable.
    double normal(double mu, double sigma);

    // Cauchy(loc, scale) via inverse CDF: loc + scale * tan(pi * (u - 1/2)).
    double cauchy(double loc, double scale);

    // Uniform integer in [0, n), n >= 1, via multiply-shift on the raw
    // 64-bit stream (bias < 2^-64 * n, negligible and deterministic).
    std::size_t index(std::size_t n);

private:
    std::array<std::uint64_t, 4> state_;
    std::uint64_t seed_;
};

// splitmix64 step; exposed because seed-derivation code reuses it.
std::uint64_t splitmix64(std::uint64_t& x);

// 64-bit FNV-1a over a byte string; used to derive per-run seeds from a
// (base seed, algorithm, problem, run index) identity in a documented,
// platform-stable way.
std::uint64_t fnv1a64(const void* data, std::size_t len);

} // namespace vlopt
