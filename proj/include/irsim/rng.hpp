#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace irsim {

// splitmix64 finalizer; bijective with good avalanche.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// Derives an independent engine from a tuple of words such as
// (seed, grid_index, trial_index, purpose). Trials, grid points and retry
// draws each get their own stream, so results do not depend on how trials
// are scheduled across workers.
inline std::mt19937_64 make_stream(std::initializer_list<std::uint64_t> words) {
    std::uint64_t h = 0x8BADF00DDEADBEEFull;
    for (std::uint64_t w : words)
        h = mix64(h + 0x9E3779B97F4A7C15ull + w);
    return std::mt19937_64(mix64(h));
}

// Uniform double in [0, 1) with 53 random bits. Hand-rolled so the byte
// stream is identical across standard-library implementations.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform_phase(std::mt19937_64& eng) {
    return 2.0 * std::numbers::pi * uniform01(eng);
}

inline std::complex<double> unit_phasor(std::mt19937_64& eng) {
    return std::polar(1.0, uniform_phase(eng));
}

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
// |z|^2 ~ Exp(variance), phase uniform.
inline std::complex<double> complex_gaussian(std::mt19937_64& eng, double variance) {
    const double u = uniform01(eng);
    const double mag = std::sqrt(-variance * std::log1p(-u));
    return std::polar(mag, uniform_phase(eng));
}

}  // namespace irsim
