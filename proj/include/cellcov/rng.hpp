#pragma once
// Reproducible random streams.
//
// The engine is the 64-bit Mersenne Twister, whose output sequence is fixed
// by the C++ standard. Independent substreams (one per Monte Carlo run) are
// seeded from std::seed_seq over the four 32-bit halves of (seed, stream);
// seed_seq's mixing is likewise standardized, so a (seed, stream) pair
// yields the same numbers on every conforming platform. Distributions come
// from Boost.Random, whose algorithms (unlike std::normal_distribution) are
// identical across standard libraries.

#include <cstdint>
#include <random>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace cellcov {

using Rng = std::mt19937_64;

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

/// Uniform double in the open interval (0, 1) from the top 53 bits.
inline double uniform_open01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double standard_normal(Rng& rng) {
    return boost::random::normal_distribution<double>(0.0, 1.0)(rng);
}

inline double unit_exponential(Rng& rng) {
    return boost::random::exponential_distribution<double>(1.0)(rng);
}

}  // namespace cellcov
