// Shared test utilities: matrix comparison and seeded random draws.
#pragma once

#include "paramnet/wave.hpp"

#include <random>

namespace testutil {

inline double max_abs_diff(const paramnet::Matrix& a, const paramnet::Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Deterministic engine; each test site uses its own fixed seed.
inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline double uniform(std::mt19937& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

}  // namespace testutil
