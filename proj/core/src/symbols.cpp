#include "pdolab/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pdolab {

void SymbolClassParams::validate() const {
    if (!std::isfinite(m)) throw ConfigError("symbol class: m must be finite");
    if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("symbol class: rho must lie in [0,1]");
    if (!(delta >= 0.0 && delta < 1.0)) throw ConfigError("symbol class: delta must lie in [0,1)");
}

double japanese_bracket(const Vec2& xi) { return std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1]); }

namespace {

// exp(-1/t) smoothstep: 0 at t<=0, 1 at t>=1, C^inf.
double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double e1 = std::exp(-1.0 / t);
    const double e2 = std::exp(-1.0 / (1.0 - t));
    return e1 / (e1 + e2);
}

}  // namespace

double low_freq_cut(double r) { return smoothstep(r - 1.0); }

Symbol::Symbol(Grid grid, SymbolClassParams params, Evaluator eval, std::string family_tag,
               std::vector<double> family_params, bool low_freq_cutoff)
    : grid_(std::move(grid)),
      params_(params),
      eval_(std::move(eval)),
      family_tag_(std::move(family_tag)),
      family_params_(std::move(family_params)),
      low_freq_cutoff_(low_freq_cutoff) {
    params_.validate();
}

Symbol Symbol::with_support(double lo, double hi) const {
    Symbol s = *this;
    s.support_lo_ = lo;
    s.support_hi_ = hi;
    return s;
}

Symbol make_family(const std::string& tag, const std::vector<double>& params,
                   const SymbolClassParams& class_params, const Grid& grid) {
    class_params.validate();
    const auto need = [&](std::size_t n) {
        if (params.size() != n) {
            std::ostringstream os;
            os << "family '" << tag << "' expects " << n << " parameter(s), got " << params.size();
            throw ConfigError(os.str());
        }
    };
    const double m = class_params.m;
    const double rho = class_params.rho;
    const double delta = class_params.delta;
    const double L = grid.side_length();

    if (tag == "constant") {
        need(1);
        const double c = params[0];
        // c == 0 vacuously vanishes on |xi| <= 1
        return Symbol(grid, class_params,
                      [c](const Vec2&, const Vec2&) { return cplx(c, 0.0); },
                      tag, params, c == 0.0);
    }
    if (tag == "power") {
        need(0);
        return Symbol(grid, class_params,
                      [m](const Vec2&, const Vec2& xi) {
                          return cplx(std::pow(japanese_bracket(xi), m), 0.0);
                      },
                      tag, params, false);
    }
    if (tag == "multiplier_oscillatory") {
        need(1);
        const double lambda = params[0];
        return Symbol(grid, class_params,
                      [m, rho, lambda](const Vec2&, const Vec2& xi) {
                          const double r = std::hypot(xi[0], xi[1]);
                          const double c = low_freq_cut(r);
                          if (c == 0.0) return cplx(0.0);
                          const double br = japanese_bracket(xi);
                          return std::polar(c * std::pow(br, m), lambda * std::pow(br, 1.0 - rho));
                      },
                      tag, params, true);
    }
    if (tag == "exotic" || tag == "random_smooth") {
        double lambda, mu;
        std::vector<double> prof_a, prof_b;  // cos/sin amplitudes of the phase profile
        if (tag == "exotic") {
            need(2);
            lambda = params[0];
            mu = params[1];
            prof_a = {0.0};
            prof_b = {1.0};  // s(x) = sin(2 pi x_1 / L)
        } else {
            need(1);
            SplitMix64 rng(static_cast<std::uint64_t>(params[0]));
            lambda = 0.5 + rng.uniform01();
            mu = 0.5 + rng.uniform01();
            for (int k = 1; k <= 3; ++k) {
                prof_a.push_back(rng.uniform_sym() / k);
                prof_b.push_back(rng.uniform_sym() / k);
            }
        }
        return Symbol(grid, class_params,
                      [m, rho, delta, lambda, mu, prof_a, prof_b, L](const Vec2& x, const Vec2& xi) {
                          const double r = std::hypot(xi[0], xi[1]);
                          const double c = low_freq_cut(r);
                          if (c == 0.0) return cplx(0.0);
                          const double br = japanese_bracket(xi);
                          double s = 0.0;
                          for (std::size_t k = 0; k < prof_a.size(); ++k) {
                              const double th = two_pi * (k + 1) * x[0] / L;
                              s += prof_a[k] * std::cos(th) + prof_b[k] * std::sin(th);
                          }
                          const double phase = lambda * std::pow(br, 1.0 - rho) +
                                               mu * s * std::pow(br, delta);
                          return std::polar(c * std::pow(br, m), phase);
                      },
                      tag, params, true);
    }
    throw ConfigError("unknown symbol family '" + tag + "'");
}

Symbol conjugate(const Symbol& a) {
    auto inner = a;  // copies evaluator
    return Symbol(a.grid(), a.params(),
                  [inner](const Vec2& x, const Vec2& xi) { return std::conj(inner(x, xi)); },
                  a.family_tag() + "~conj", a.family_params(), a.low_freq_cutoff())
        .with_support(a.support_lo(), a.support_hi());
}

Symbol zero_symbol(const Grid& grid, const SymbolClassParams& cp) {
    return Symbol(grid, cp, [](const Vec2&, const Vec2&) { return cplx(0.0); }, "zero", {}, true);
}

std::vector<MIdx> multi_indices_up_to(int dim, int s) {
    std::vector<MIdx> out;
    for (int total = 0; total <= s; ++total) {
        if (dim == 1) {
            out.push_back({total, 0});
        } else {
            for (int a0 = total; a0 >= 0; --a0) out.push_back({a0, total - a0});
        }
    }
    return out;
}

const SeminormEntry* SeminormReport::find(const MIdx& alpha, const MIdx& beta) const {
    for (const auto& e : entries)
        if (e.alpha == alpha && e.beta == beta) return &e;
    return nullptr;
}

double SeminormReport::max_value() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.value);
    return m;
}

namespace {

// Coefficients of the k-fold composition of the centered first difference
// (f(+1)-f(-1))/2 over offsets -k..k; divide by step^k afterwards.
std::vector<double> central_diff_coeffs(int k) {
    std::vector<double> c{1.0};  // offset 0
    for (int it = 0; it < k; ++it) {
        std::vector<double> n(c.size() + 2, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            n[i] -= 0.5 * c[i];
            n[i + 2] += 0.5 * c[i];
        }
        c = std::move(n);
    }
    return c;  // length 2k+1
}

}  // namespace

namespace {

// Lattice tables in signed frequency order: slot s (per axis, 0..N-1) holds
// xi-index j = s - N/2, so xi-stencil neighbors are adjacent slots.
struct SignedLattice {
    int dim, N;
    double dxi;
    std::size_t size;

    explicit SignedLattice(const Grid& g)
        : dim(g.dim()), N(g.points_per_axis()), dxi(two_pi / g.side_length()),
          size(g.size()) {}

    Vec2 xi(std::size_t flat) const {
        if (dim == 1) return {(static_cast<int>(flat) - N / 2) * dxi, 0.0};
        const int s0 = static_cast<int>(flat) / N, s1 = static_cast<int>(flat) % N;
        return {(s0 - N / 2) * dxi, (s1 - N / 2) * dxi};
    }
    std::array<int, 2> slot(std::size_t flat) const {
        if (dim == 1) return {static_cast<int>(flat), 0};
        return {static_cast<int>(flat) / N, static_cast<int>(flat) % N};
    }
};

// Centered difference of order k along an axis of the signed lattice; entries
// whose stencil leaves the lattice are left untouched (callers mask them out).
void xi_axis_diff(std::vector<cplx>& v, std::vector<cplx>& tmp, const SignedLattice& lat,
                  int axis, int k, const std::vector<double>& coeffs) {
    if (k == 0) return;
    tmp = v;
    const int N = lat.N;
    const std::ptrdiff_t stride = (lat.dim == 2 && axis == 0) ? N : 1;
    const std::size_t lines = lat.dim == 2 ? static_cast<std::size_t>(N) : 1;
    for (std::size_t ln = 0; ln < lines; ++ln) {
        const std::size_t base = (lat.dim == 2 && axis == 0) ? ln : ln * N;
        for (int s = k; s < N - k; ++s) {
            cplx acc(0.0);
            for (int o = -k; o <= k; ++o)
                acc += coeffs[o + k] * tmp[base + static_cast<std::size_t>(s + o) * stride];
            v[base + static_cast<std::size_t>(s) * stride] = acc;
        }
    }
}

}  // namespace

SeminormReport estimate_seminorms(const Symbol& a, int max_order, double freq_floor) {
    if (max_order < 0 || max_order > 4) throw ConfigError("estimate_seminorms: max_order must be in [0,4]");
    const Grid& g = a.grid();
    const int dim = g.dim();
    const int N = g.points_per_axis();
    const double h = g.spacing();
    const SignedLattice lat(g);
    const auto& cp = a.params();

    const auto alphas = multi_indices_up_to(dim, max_order);
    const auto betas = cp.rough ? std::vector<MIdx>{{0, 0}} : alphas;

    std::vector<std::vector<double>> cd(max_order + 1);
    for (int k = 0; k <= max_order; ++k) cd[k] = central_diff_coeffs(k);

    // Admissible slots: |xi| >= freq_floor and a margin of max_order lattice
    // steps per axis so every stencil stays on the lattice.
    std::vector<char> admissible(lat.size, 0);
    std::vector<double> br(lat.size, 1.0);
    for (std::size_t s = 0; s < lat.size; ++s) {
        const auto sl = lat.slot(s);
        bool ok = true;
        for (int d = 0; d < dim; ++d)
            ok = ok && sl[d] >= max_order && sl[d] < N - max_order;
        const Vec2 xi = lat.xi(s);
        ok = ok && std::hypot(xi[0], xi[1]) >= freq_floor;
        admissible[s] = ok ? 1 : 0;
        br[s] = japanese_bracket(xi);
    }
    // <xi>^{m - rho|alpha| + delta|beta|} per (|alpha|, |beta|) total order.
    std::vector<std::vector<double>> norm(max_order + 1,
                                          std::vector<double>((max_order + 1) * lat.size));
    for (int ta = 0; ta <= max_order; ++ta)
        for (int tb = 0; tb <= max_order; ++tb)
            for (std::size_t s = 0; s < lat.size; ++s)
                norm[ta][tb * lat.size + s] =
                    std::pow(br[s], cp.m - cp.rho * ta + cp.delta * tb);

    SeminormReport rep{max_order, freq_floor, {}};
    for (const auto& alpha : alphas)
        for (const auto& beta : betas) rep.entries.push_back({alpha, beta, 0.0});

    const int span = 2 * max_order + 1;
    const int sx1 = dim == 2 ? max_order : 0;
    const int nx_tabs = span * (dim == 2 ? span : 1);
    std::vector<std::vector<cplx>> xtab(nx_tabs, std::vector<cplx>(lat.size));
    std::vector<cplx> B(lat.size), D(lat.size), tmp(lat.size);

    for (std::size_t xk = 0; xk < g.size(); ++xk) {
        const Vec2 x = g.point(xk);
        for (int ox0 = -max_order; ox0 <= max_order; ++ox0)
            for (int ox1 = -sx1; ox1 <= sx1; ++ox1) {
                auto& tab = xtab[(ox0 + max_order) * (dim == 2 ? span : 1) + (dim == 2 ? ox1 + max_order : 0)];
                const Vec2 xo{x[0] + ox0 * h, x[1] + ox1 * h};
                for (std::size_t s = 0; s < lat.size; ++s) tab[s] = a(xo, lat.xi(s));
            }

        for (const auto& be : betas) {
            std::fill(B.begin(), B.end(), cplx(0.0));
            for (int ox0 = -be[0]; ox0 <= be[0]; ++ox0)
                for (int ox1 = -be[1]; ox1 <= be[1]; ++ox1) {
                    const double c = cd[be[0]][ox0 + be[0]] * cd[be[1]][ox1 + be[1]];
                    if (c == 0.0) continue;
                    const auto& tab = xtab[(ox0 + max_order) * (dim == 2 ? span : 1) +
                                           (dim == 2 ? ox1 + max_order : 0)];
                    for (std::size_t s = 0; s < lat.size; ++s) B[s] += c * tab[s];
                }
            const double hb = std::pow(h, midx_order(be));

            for (const auto& al : alphas) {
                D = B;
                xi_axis_diff(D, tmp, lat, 0, al[0], cd[al[0]]);
                if (dim == 2) xi_axis_diff(D, tmp, lat, 1, al[1], cd[al[1]]);
                const double scale = 1.0 / (hb * std::pow(lat.dxi, midx_order(al)));
                const double* nr = norm[midx_order(al)].data() +
                                   static_cast<std::size_t>(midx_order(be)) * lat.size;

                SeminormEntry* e = nullptr;
                for (auto& entry : rep.entries)
                    if (entry.alpha == al && entry.beta == be) {
                        e = &entry;
                        break;
                    }
                for (std::size_t s = 0; s < lat.size; ++s) {
                    if (!admissible[s]) continue;
                    const double deriv = std::abs(D[s]) * scale;
                    if (!std::isfinite(deriv)) {
                        const Vec2 xi = lat.xi(s);
                        std::ostringstream os;
                        os << "estimate_seminorms: non-finite difference at alpha=(" << al[0] << ","
                           << al[1] << ") beta=(" << be[0] << "," << be[1] << ") x=(" << x[0] << ","
                           << x[1] << ") xi=(" << xi[0] << "," << xi[1] << ")";
                        throw NumericalError(os.str());
                    }
                    e->value = std::max(e->value, deriv / nr[s]);
                }
            }
        }
    }
    return rep;
}

}  // namespace pdolab
