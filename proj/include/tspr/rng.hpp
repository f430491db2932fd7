#pragma once

#include <cstdint>
#include <random>

namespace tspr {

using Rng = std::mt19937_64;

// SplitMix64 finalizer, used to spread seed paths over the full 64-bit space.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Child seed for the stream addressed by (master, a, b, c). Streams with
// distinct paths are decorrelated and do not depend on evaluation order,
// which keeps runs reproducible under any worker count.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(master ^ 0x6A09E667F3BCC909ull);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    return splitmix64(s ^ c);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                    std::uint64_t c = 0) {
    return Rng(derive_seed(master, a, b, c));
}

inline double draw_uniform(Rng& rng) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// Bernoulli via an explicit uniform so counterfactual scenarios sharing a
// stream consume the same number of draws per decision (common random numbers).
inline bool draw_bernoulli(Rng& rng, double p) {
    return draw_uniform(rng) < p;
}

inline double draw_normal(Rng& rng, double mean = 0.0, double stddev = 1.0) {
    return std::normal_distribution<double>(mean, stddev)(rng);
}

}  // namespace tspr
