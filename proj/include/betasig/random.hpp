#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace betasig {

// std::uniform_real_distribution is implementation-defined, so seeded runs
// would not reproduce across standard libraries. All randomness in this
// project goes through these helpers instead: a fixed mapping from the
// mt19937_64 stream gives bit-identical sequences everywhere.

/// Uniform double in [0, 1) from the top 53 bits of the generator output.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi).
inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// One standard normal draw (Box-Muller, consumes two uniforms).
inline std::pair<double, double> gauss_pair(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng); // (0, 1]; keeps log finite
    const double u2 = uniform01(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

} // namespace betasig
