#include "pdolab/fft.hpp"

#include <cmath>

#include "pdolab/grid.hpp"

namespace pdolab::detail {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey on a contiguous line.  `tw` holds the
// length-n twiddle table e^{sign 2 pi i t/n}, each entry from std::polar.
void fft_pow2(cplx* a, std::size_t n, const std::vector<cplx>& tw) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx w = tw[k * step];
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Direct O(n^2) line transform for non-power-of-two axis lengths.
void dft_direct(cplx* a, std::size_t n, const std::vector<cplx>& tw, std::vector<cplx>& scratch) {
    scratch.assign(n, cplx(0.0));
    for (std::size_t j = 0; j < n; ++j) {
        cplx acc(0.0);
        for (std::size_t k = 0; k < n; ++k) acc += a[k] * tw[(j * k) % n];
        scratch[j] = acc;
    }
    for (std::size_t j = 0; j < n; ++j) a[j] = scratch[j];
}

}  // namespace

void dft_nd(std::vector<cplx>& v, const Grid& g, bool inverse) {
    const std::size_t n = static_cast<std::size_t>(g.points_per_axis());
    const double sign = inverse ? 1.0 : -1.0;

    std::vector<cplx> tw(n);
    for (std::size_t t = 0; t < n; ++t)
        tw[t] = std::polar(1.0, sign * two_pi * static_cast<double>(t) / static_cast<double>(n));

    const bool pow2 = is_pow2(n);
    std::vector<cplx> line(n), scratch;

    if (g.dim() == 1) {
        if (pow2)
            fft_pow2(v.data(), n, tw);
        else
            dft_direct(v.data(), n, tw, scratch);
        return;
    }

    // axis 1 (contiguous rows)
    for (std::size_t r = 0; r < n; ++r) {
        cplx* row = v.data() + r * n;
        if (pow2)
            fft_pow2(row, n, tw);
        else
            dft_direct(row, n, tw, scratch);
    }
    // axis 0 (strided columns, gathered into a contiguous line)
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) line[r] = v[r * n + c];
        if (pow2)
            fft_pow2(line.data(), n, tw);
        else
            dft_direct(line.data(), n, tw, scratch);
        for (std::size_t r = 0; r < n; ++r) v[r * n + c] = line[r];
    }
}

}  // namespace pdolab::detail
