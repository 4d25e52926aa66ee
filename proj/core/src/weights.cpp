#include "pdolab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pdolab {

Weight::Weight(const Grid& g, std::vector<double> v, std::string t)
    : grid(g), values(std::move(v)), tag(std::move(t)) {
    if (values.size() != grid.size()) throw ConfigError("Weight: value count does not match grid");
    bool any_positive = false;
    for (double x : values) {
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ConfigError("Weight: values must be finite and nonnegative");
        any_positive = any_positive || x > 0.0;
    }
    if (!any_positive) throw ConfigError("Weight: identically zero");
}

Weight constant_weight(double c, const Grid& grid) {
    if (!(c > 0.0)) throw ConfigError("constant_weight: c must be positive");
    return Weight(grid, std::vector<double>(grid.size(), c), "const:" + std::to_string(c));
}

Weight power_weight(double a, const Grid& grid) {
    if (!(a > -grid.dim())) throw ConfigError("power_weight: requires a > -n");
    const double clamp = grid.spacing() / 2.0;
    std::vector<double> v(grid.size());
    const Vec2 origin{0.0, 0.0};
    for (std::size_t k = 0; k < v.size(); ++k) {
        const double d = std::max(grid.periodic_distance(grid.point(k), origin), clamp);
        v[k] = std::pow(d, a);
    }
    return Weight(grid, std::move(v), "power:" + std::to_string(a));
}

Weight parse_weight_spec(const std::string& spec, const Grid& grid) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ConfigError("weight spec must look like 'power:a' or 'const:c'");
    const std::string kind = spec.substr(0, colon);
    double val = 0.0;
    try {
        val = std::stod(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw ConfigError("weight spec: cannot parse parameter in '" + spec + "'");
    }
    if (kind == "power") return power_weight(val, grid);
    if (kind == "const") return constant_weight(val, grid);
    throw ConfigError("unknown weight kind '" + kind + "'");
}

double ap_constant(const Weight& w, double p, const CubeFamily& fam) {
    if (w.grid != fam.grid()) throw ConfigError("ap_constant: grid mismatch");
    if (!(p > 1.0)) throw ConfigError("ap_constant: requires p > 1 (use a1_constant for p = 1)");

    const Grid& g = w.grid;
    const double dual_exp = 1.0 / (1.0 - p);
    std::vector<double> dual(w.values.size());
    for (std::size_t k = 0; k < dual.size(); ++k) dual[k] = std::pow(w.values[k], dual_exp);

    double best = 0.0;
    for (int s = 0; s < fam.num_scales(); ++s) {
        const int win = fam.window(s);
        const double cells = std::pow(static_cast<double>(win), g.dim());
        const std::vector<double> s1 = detail::window_sums(w.values, g, win);
        const std::vector<double> s2 = detail::window_sums(dual, g, win);
        for (std::size_t k = 0; k < s1.size(); ++k) {
            const double cand = (s1[k] / cells) * std::pow(s2[k] / cells, p - 1.0);
            best = std::max(best, cand);
        }
    }
    return best;
}

double a1_constant(const Weight& w, const CubeFamily& fam) {
    if (w.grid != fam.grid()) throw ConfigError("a1_constant: grid mismatch");
    for (double x : w.values)
        if (x == 0.0) throw ConfigError("a1_constant: zero weight value encountered");

    GridFunction wf(w.grid);
    for (std::size_t k = 0; k < w.values.size(); ++k) wf.values[k] = cplx(w.values[k], 0.0);
    const GridFunction m = hl_maximal(wf, fam);

    double best = 0.0;
    for (std::size_t k = 0; k < w.values.size(); ++k)
        best = std::max(best, m.values[k].real() / w.values[k]);
    return best;
}

}  // namespace pdolab
