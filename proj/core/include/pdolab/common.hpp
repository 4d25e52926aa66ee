#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pdolab {

using cplx = std::complex<double>;
using Vec2 = std::array<double, 2>;  // point in R^n, n<=2; unused axis is 0
using MIdx = std::array<int, 2>;     // multi-index, |alpha| = a[0]+a[1]

inline constexpr double two_pi = 6.283185307179586476925286766559;

inline constexpr const char* version_string = "0.1.0";

/// Bad configuration or parameter outside a documented contract. CLI exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Non-finite value encountered where the contract demands finite data. CLI exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double dot2(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

inline int midx_order(const MIdx& a) { return a[0] + a[1]; }

// splitmix64: tiny seeded generator, value semantics, identical across platforms.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1,1).
    double uniform_sym() { return 2.0 * uniform01() - 1.0; }
};

/// Stable mixing of a seed with stream/member indices; used to derive
/// per-member and per-mode substreams that do not collide.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0x5555555555555555ull) {
    SplitMix64 g(seed ^ (a * 0xd1342543de82ef95ull) ^ (b * 0xaf251af3b0f025b5ull));
    g.next();
    return g.next();
}

}  // namespace pdolab
