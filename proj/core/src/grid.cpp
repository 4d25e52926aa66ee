#include "pdolab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pdolab/fft.hpp"
#include "pdolab/weights.hpp"

namespace pdolab {

Grid::Grid(int dim, int points_per_axis, double side_length)
    : dim_(dim), n_(points_per_axis), length_(side_length) {
    if (dim != 1 && dim != 2) throw ConfigError("grid dim must be 1 or 2");
    if (points_per_axis < 8 || points_per_axis % 2 != 0)
        throw ConfigError("points_per_axis must be an even integer >= 8");
    if (!(side_length > 0.0) || !std::isfinite(side_length))
        throw ConfigError("side_length must be positive and finite");
    size_ = static_cast<std::size_t>(n_);
    if (dim_ == 2) size_ *= static_cast<std::size_t>(n_);
}

double Grid::cell_measure() const {
    const double h = spacing();
    return dim_ == 1 ? h : h * h;
}

Vec2 Grid::point(std::size_t flat) const {
    const auto idx = unflatten(flat);
    const double h = spacing();
    return {idx[0] * h, dim_ == 2 ? idx[1] * h : 0.0};
}

std::array<int, 2> Grid::freq_index(std::size_t flat) const {
    auto idx = unflatten(flat);
    for (int d = 0; d < dim_; ++d)
        if (idx[d] >= n_ / 2) idx[d] -= n_;
    return idx;
}

Vec2 Grid::freq(std::size_t flat) const {
    const auto j = freq_index(flat);
    const double step = two_pi / length_;
    return {j[0] * step, dim_ == 2 ? j[1] * step : 0.0};
}

double Grid::freq_abs(std::size_t flat) const {
    const Vec2 xi = freq(flat);
    return std::hypot(xi[0], xi[1]);
}

double Grid::max_freq_abs() const {
    const double step = two_pi / length_;
    const double m = step * (n_ / 2);
    return dim_ == 1 ? m : m * std::sqrt(2.0);
}

double Grid::periodic_diff(double a, double b) const {
    double d = std::fmod(a - b, length_);
    if (d < -length_ / 2) d += length_;
    if (d >= length_ / 2) d -= length_;
    return d;
}

double Grid::periodic_distance(const Vec2& a, const Vec2& b) const {
    const double d0 = periodic_diff(a[0], b[0]);
    if (dim_ == 1) return std::abs(d0);
    return std::hypot(d0, periodic_diff(a[1], b[1]));
}

GridFunction::GridFunction(const Grid& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
        throw ConfigError("GridFunction: value count does not match grid size");
}

Spectrum::Spectrum(const Grid& g, std::vector<cplx> c) : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != grid.size())
        throw ConfigError("Spectrum: coefficient count does not match grid size");
}

namespace {

void require_finite(const std::vector<cplx>& v, const char* what) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v[k].real()) || !std::isfinite(v[k].imag()))
            throw NumericalError(std::string(what) + ": non-finite value at index " + std::to_string(k));
    }
}

}  // namespace

Spectrum forward_transform(const GridFunction& u) {
    require_finite(u.values, "forward_transform");
    Spectrum s(u.grid, u.values);
    detail::dft_nd(s.coeffs, u.grid, /*inverse=*/false);
    const double scale = u.grid.cell_measure();
    for (auto& c : s.coeffs) c *= scale;
    return s;
}

GridFunction inverse_transform(const Spectrum& s) {
    require_finite(s.coeffs, "inverse_transform");
    GridFunction u(s.grid, s.coeffs);
    detail::dft_nd(u.values, s.grid, /*inverse=*/true);
    double scale = 1.0 / s.grid.side_length();
    if (s.grid.dim() == 2) scale *= scale;
    for (auto& v : u.values) v *= scale;
    return u;
}

namespace {

double lp_norm_impl(const GridFunction& u, double p, const std::vector<double>* w) {
    if (!(p > 0.0)) throw ConfigError("lp_norm: p must be positive");
    double acc = 0.0;
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        const double a = std::abs(u.values[k]);
        if (a == 0.0) continue;
        acc += std::pow(a, p) * (w ? (*w)[k] : 1.0);
    }
    return std::pow(u.grid.cell_measure() * acc, 1.0 / p);
}

double weak_impl(const GridFunction& u, double p, const std::vector<double>* w) {
    if (!(p > 0.0)) throw ConfigError("weak_lp_quasinorm: p must be positive");
    const std::size_t n = u.values.size();
    std::vector<std::pair<double, double>> lv(n);  // (|u|, weight mass)
    for (std::size_t k = 0; k < n; ++k)
        lv[k] = {std::abs(u.values[k]), w ? (*w)[k] : 1.0};
    std::sort(lv.begin(), lv.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    // Descending pass: after processing a block of equal values v, `mass`
    // equals omega{|u| >= v}.
    double best = 0.0, mass = 0.0;
    const double cell = u.grid.cell_measure();
    std::size_t i = 0;
    while (i < n) {
        const double v = lv[i].first;
        while (i < n && lv[i].first == v) mass += lv[i++].second;
        if (v > 0.0) best = std::max(best, std::pow(v, p) * cell * mass);
    }
    return std::pow(best, 1.0 / p);
}

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
    if (a != b) throw ConfigError(std::string(what) + ": grid mismatch");
}

}  // namespace

double lp_norm(const GridFunction& u, double p) { return lp_norm_impl(u, p, nullptr); }

double lp_norm(const GridFunction& u, double p, const Weight& w) {
    require_same_grid(u.grid, w.grid, "lp_norm");
    return lp_norm_impl(u, p, &w.values);
}

double weak_lp_quasinorm(const GridFunction& u, double p) { return weak_impl(u, p, nullptr); }

double weak_lp_quasinorm(const GridFunction& u, double p, const Weight& w) {
    require_same_grid(u.grid, w.grid, "weak_lp_quasinorm");
    return weak_impl(u, p, &w.values);
}

}  // namespace pdolab
