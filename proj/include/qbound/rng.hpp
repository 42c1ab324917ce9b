#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qbound/complex_matrix.hpp"

namespace qbound {

/// Deterministic random stream used for every seeded fixture.
///
/// The algorithm is pinned so ports in other languages can reproduce the
/// fixtures bit-for-bit: a std::mt19937_64 engine seeded directly with the
/// 64-bit seed, uniforms taken as the top 53 bits scaled by 2^-53, and
/// normals generated by the Box-Muller transform (pairs cached).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe under log().
    double uniform_pos() { return double((gen_() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double t = 2.0 * std::numbers::pi * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    cplx cnormal() {
        const double re = normal();
        return {re, normal()};
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace qbound
