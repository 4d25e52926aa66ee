#include "pdolab/quantize.hpp"

#include <cmath>

#include "pdolab/fft.hpp"

namespace pdolab {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (a != b) throw ConfigError(std::string(what) + ": grid mismatch");
}

double inv_volume(const Grid& g) {
    double v = 1.0 / g.side_length();
    return g.dim() == 2 ? v * v : v;
}

bool in_support(const Symbol& a, double r) {
    return r >= a.support_lo() && r <= a.support_hi();
}

}  // namespace

GridFunction apply_kn(const Symbol& a, const GridFunction& u) {
    require_same_grid(a.grid(), u.grid, "apply_kn");
    const Grid& g = u.grid;
    const Spectrum s = forward_transform(u);
    const double scale = inv_volume(g);

    GridFunction out(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec2 x = g.point(k);
        cplx acc(0.0);
        for (std::size_t t = 0; t < g.size(); ++t) {
            if (s.coeffs[t] == cplx(0.0)) continue;
            const Vec2 xi = g.freq(t);
            if (!in_support(a, std::hypot(xi[0], xi[1]))) continue;
            acc += std::polar(1.0, dot2(x, xi)) * a(x, xi) * s.coeffs[t];
        }
        out.values[k] = acc * scale;
    }
    return out;
}

GridFunction apply_dual(const Symbol& a, const GridFunction& u) {
    require_same_grid(a.grid(), u.grid, "apply_dual");
    const Grid& g = u.grid;
    for (std::size_t k = 0; k < u.values.size(); ++k)
        if (!std::isfinite(u.values[k].real()) || !std::isfinite(u.values[k].imag()))
            throw NumericalError("apply_dual: non-finite input value");

    const double cell = g.cell_measure();
    Spectrum v(g);
    for (std::size_t t = 0; t < g.size(); ++t) {
        const Vec2 xi = g.freq(t);
        if (!in_support(a, std::hypot(xi[0], xi[1]))) continue;
        cplx acc(0.0);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Vec2 x = g.point(k);
            acc += std::polar(1.0, -dot2(x, xi)) * a(x, xi) * u.values[k];
        }
        v.coeffs[t] = acc * cell;
    }
    return inverse_transform(v);
}

KernelMatrix::KernelMatrix(const Grid& g) : grid(g) {
    if (g.size() > 4096) throw ConfigError("KernelMatrix: N^n exceeds the 4096 size guard");
    entries.assign(g.size() * g.size(), cplx(0.0));
}

KernelMatrix kernel(const Symbol& a, bool dual) {
    const Grid& g = a.grid();
    KernelMatrix K(g);
    const std::size_t n = g.size();
    const double scale = inv_volume(g);
    std::vector<cplx> line(n);

    if (!dual) {
        // Row k as an inverse-order DFT of c_t = a(x_k, xi_t) e^{i x_k.xi_t}:
        // K[k][m] = L^{-n} sum_t c_t e^{-i x_m.xi_t}.
        for (std::size_t k = 0; k < n; ++k) {
            const Vec2 x = g.point(k);
            for (std::size_t t = 0; t < n; ++t) {
                const Vec2 xi = g.freq(t);
                line[t] = in_support(a, std::hypot(xi[0], xi[1]))
                              ? a(x, xi) * std::polar(1.0, dot2(x, xi))
                              : cplx(0.0);
            }
            detail::dft_nd(line, g, /*inverse=*/false);
            for (std::size_t m = 0; m < n; ++m) K.entries[k * n + m] = line[m] * scale;
        }
    } else {
        // Column m: K*[k][m] = L^{-n} sum_t [a(x_m, xi_t) e^{-i x_m.xi_t}] e^{i x_k.xi_t}.
        for (std::size_t m = 0; m < n; ++m) {
            const Vec2 y = g.point(m);
            for (std::size_t t = 0; t < n; ++t) {
                const Vec2 xi = g.freq(t);
                line[t] = in_support(a, std::hypot(xi[0], xi[1]))
                              ? a(y, xi) * std::polar(1.0, -dot2(y, xi))
                              : cplx(0.0);
            }
            detail::dft_nd(line, g, /*inverse=*/true);
            for (std::size_t k = 0; k < n; ++k) K.entries[k * n + m] = line[k] * scale;
        }
    }
    return K;
}

GridFunction apply_kernel(const KernelMatrix& K, const GridFunction& u) {
    require_same_grid(K.grid, u.grid, "apply_kernel");
    const std::size_t n = K.order();
    const double cell = K.grid.cell_measure();
    GridFunction out(K.grid);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0);
        const cplx* row = K.entries.data() + k * n;
        for (std::size_t m = 0; m < n; ++m) acc += row[m] * u.values[m];
        out.values[k] = acc * cell;
    }
    return out;
}

}  // namespace pdolab
