#include "pdolab/hardy.hpp"

#include <algorithm>
#include <cmath>

#include "pdolab/symbols.hpp"  // multi_indices_up_to

namespace pdolab {

namespace {

// Grid indices covered by the cube, one start index per axis; the cube holds
// w = side/h consecutive cells beginning at start (periodic wrap).
struct CubeCells {
    int start[2];
    int width;
};

CubeCells locate_cube(const Cube& cube, const Grid& g, int min_points) {
    const double h = g.spacing();
    const double wreal = cube.side / h;
    const int w = static_cast<int>(std::lround(wreal));
    if (std::abs(wreal - w) > 1e-9 || w < 1)
        throw ConfigError("cube side must be a positive multiple of the grid spacing");
    if (w > g.points_per_axis()) throw ConfigError("cube does not fit on the torus");
    if (w < min_points)
        throw ConfigError("degenerate cube: fewer than s+2 grid points per axis");
    CubeCells c{};
    c.width = w;
    for (int d = 0; d < g.dim(); ++d) {
        const double lo = cube.center[d] - cube.side / 2.0;
        const int s = static_cast<int>(std::lround(lo / h));
        const int N = g.points_per_axis();
        c.start[d] = ((s % N) + N) % N;
    }
    return c;
}

std::vector<std::size_t> cube_flat_indices(const CubeCells& c, const Grid& g) {
    const int N = g.points_per_axis();
    std::vector<std::size_t> out;
    if (g.dim() == 1) {
        out.reserve(c.width);
        for (int i = 0; i < c.width; ++i) out.push_back((c.start[0] + i) % N);
    } else {
        out.reserve(static_cast<std::size_t>(c.width) * c.width);
        for (int i = 0; i < c.width; ++i)
            for (int j = 0; j < c.width; ++j)
                out.push_back(g.flatten((c.start[0] + i) % N, (c.start[1] + j) % N));
    }
    return out;
}

// C^inf bump on (-1,1), exactly 0 outside.
double bump01(double t) {
    const double t2 = t * t;
    if (t2 >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - t2));
}

}  // namespace

Atom make_atom(double p, double q, int s, const Cube& cube, std::uint64_t seed, const Grid& grid) {
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("make_atom: requires 0 < p <= 1");
    if (!(q >= 1.0) || !(q > p)) throw ConfigError("make_atom: requires q >= 1 and q > p");
    const int n = grid.dim();
    const int s_min = static_cast<int>(std::floor(n * (1.0 / p - 1.0)));
    if (s < s_min) throw ConfigError("make_atom: s must be >= floor(n(1/p-1))");

    const CubeCells cells = locate_cube(cube, grid, s + 2);
    const auto idx = cube_flat_indices(cells, grid);
    const std::size_t npts = idx.size();

    // Normalized displacement tau in [-1,1)^n from the cube center.
    std::vector<Vec2> tau(npts);
    const double half = cube.side / 2.0;
    for (std::size_t i = 0; i < npts; ++i) {
        const Vec2 x = grid.point(idx[i]);
        tau[i] = {grid.periodic_diff(x[0], cube.center[0]) / half,
                  n == 2 ? grid.periodic_diff(x[1], cube.center[1]) / half : 0.0};
    }

    // Seeded smooth profile: bump envelope times a random polynomial of degree
    // s+3 (so something survives the degree-s projection).
    SplitMix64 rng(mix_seed(seed, 0x61746f6dull));
    const auto poly_idx = multi_indices_up_to(n, s + 3);
    std::vector<double> coeff(poly_idx.size());
    for (auto& c : coeff) c = rng.uniform_sym();

    std::vector<double> v(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        double env = bump01(tau[i][0]);
        if (n == 2) env *= bump01(tau[i][1]);
        double poly = 0.0;
        for (std::size_t m = 0; m < poly_idx.size(); ++m) {
            const auto& a = poly_idx[m];
            poly += coeff[m] * std::pow(tau[i][0], a[0]) * (n == 2 ? std::pow(tau[i][1], a[1]) : 1.0);
        }
        v[i] = env * poly;
    }

    // Project out span{tau^alpha : |alpha| <= s} by modified Gram-Schmidt
    // (two passes) over the cube's points.
    const auto mon_idx = multi_indices_up_to(n, s);
    std::vector<std::vector<double>> basis;
    for (const auto& a : mon_idx) {
        std::vector<double> col(npts);
        for (std::size_t i = 0; i < npts; ++i)
            col[i] = std::pow(tau[i][0], a[0]) * (n == 2 ? std::pow(tau[i][1], a[1]) : 1.0);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& b : basis) {
                double dot = 0.0;
                for (std::size_t i = 0; i < npts; ++i) dot += b[i] * col[i];
                for (std::size_t i = 0; i < npts; ++i) col[i] -= dot * b[i];
            }
        double nrm = 0.0;
        for (double x : col) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) throw ConfigError("make_atom: moment projection is rank-deficient");
        for (auto& x : col) x /= nrm;
        basis.push_back(std::move(col));
    }
    for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) {
            double dot = 0.0;
            for (std::size_t i = 0; i < npts; ++i) dot += b[i] * v[i];
            for (std::size_t i = 0; i < npts; ++i) v[i] -= dot * b[i];
        }

    GridFunction gf(grid);
    for (std::size_t i = 0; i < npts; ++i) gf.values[idx[i]] = cplx(v[i], 0.0);

    const double measure = std::pow(cube.side, n);
    const double target = std::pow(measure, 1.0 / q - 1.0 / p);
    const double nrm = lp_norm(gf, q);
    if (nrm < 1e-300) throw ConfigError("make_atom: degenerate profile (zero after projection)");
    const double scale = target / nrm;
    for (auto& x : gf.values) x *= scale;

    return Atom{std::move(gf), p, q, s, cube, seed};
}

std::vector<cplx> moment_vector(const GridFunction& f, int s, const Vec2& center) {
    if (s < 0 || s > 6) throw ConfigError("moment_vector: requires 0 <= s <= 6");
    const Grid& g = f.grid;
    const auto idx = multi_indices_up_to(g.dim(), s);
    std::vector<cplx> out(idx.size(), cplx(0.0));
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec2 x = g.point(k);
        const double d0 = g.periodic_diff(x[0], center[0]);
        const double d1 = g.dim() == 2 ? g.periodic_diff(x[1], center[1]) : 0.0;
        for (std::size_t m = 0; m < idx.size(); ++m) {
            const auto& a = idx[m];
            out[m] += std::pow(d0, a[0]) * (g.dim() == 2 ? std::pow(d1, a[1]) : 1.0) * f.values[k];
        }
    }
    const double cell = g.cell_measure();
    for (auto& c : out) c *= cell;
    return out;
}

MoleculeReport molecule_report(const GridFunction& f, double p, double q, int s, double eps, int t,
                               const Vec2& x0) {
    if (q != 1.0 && q != 2.0) throw ConfigError("molecule_report: q must be 1 or 2");
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("molecule_report: requires 0 < p <= 1");
    if (t < 0) throw ConfigError("molecule_report: t must be >= 0");
    const Grid& g = f.grid;
    const int n = g.dim();

    MoleculeReport r{};
    r.p = p;
    r.q = q;
    r.s = s;
    r.eps = eps;
    r.t = t;
    r.a0 = 1.0 - 1.0 / p + eps;
    r.b0 = 1.0 - 1.0 / q + eps;
    r.b0_alt = static_cast<double>(t) / n;

    r.norm_q = lp_norm(f, q);

    GridFunction wdef(g), walt(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double d = g.periodic_distance(g.point(k), x0);
        wdef.values[k] = f.values[k] * std::pow(d, n * r.b0);
        walt.values[k] = f.values[k] * std::pow(d, static_cast<double>(t));
    }
    r.weighted_norm_q = lp_norm(wdef, q);
    r.weighted_norm_q_alt = lp_norm(walt, q);

    r.product_as_written = std::pow(r.norm_q, r.a0) * std::pow(r.weighted_norm_q, r.b0 - r.a0);
    r.product_classical = r.b0 != 0.0
                              ? std::pow(r.norm_q, r.a0 / r.b0) *
                                    std::pow(r.weighted_norm_q, 1.0 - r.a0 / r.b0)
                              : 0.0;

    r.moment_max = 0.0;
    for (const cplx& m : moment_vector(f, s, x0)) r.moment_max = std::max(r.moment_max, std::abs(m));
    return r;
}

double grand_maximal(const GridFunction& f, double p) {
    if (!(p > 0.0)) throw ConfigError("grand_maximal: p must be positive");
    const Grid& g = f.grid;
    const double L = g.side_length();
    const double radius = L / 8.0;
    const Spectrum fs = forward_transform(f);

    int G = 0;
    while ((2 << G) <= g.points_per_axis()) ++G;

    std::vector<double> sup(g.size(), 0.0);
    const Vec2 origin{0.0, 0.0};
    for (int gexp = 0; gexp <= G; ++gexp) {
        const double t = g.spacing() * (1 << gexp);
        // phi_t sampled by periodic distance and normalized to unit discrete integral.
        GridFunction phi(g);
        double mass = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double d = g.periodic_distance(g.point(k), origin);
            const double v = bump01(d / (t * radius));
            phi.values[k] = cplx(v, 0.0);
            mass += v;
        }
        const double cell = g.cell_measure();
        const double scale = 1.0 / (mass * cell);
        for (auto& v : phi.values) v *= scale;

        Spectrum ps = forward_transform(phi);
        for (std::size_t k = 0; k < ps.coeffs.size(); ++k) ps.coeffs[k] *= fs.coeffs[k];
        const GridFunction conv = inverse_transform(ps);
        for (std::size_t k = 0; k < sup.size(); ++k)
            sup[k] = std::max(sup[k], std::abs(conv.values[k]));
    }

    GridFunction m(g);
    for (std::size_t k = 0; k < sup.size(); ++k) m.values[k] = cplx(sup[k], 0.0);
    return lp_norm(m, p);
}

}  // namespace pdolab
