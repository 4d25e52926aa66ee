#include "pdolab/lpaley.hpp"

#include <cmath>
#include <string>

namespace pdolab {

namespace {

double smoothstep01(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double e1 = std::exp(-1.0 / t);
    const double e2 = std::exp(-1.0 / (1.0 - t));
    return e1 / (e1 + e2);
}

}  // namespace

Partition::Partition(double C, int j_max) : C_(C), j_max_(j_max) {
    if (!(C > 1.0)) throw ConfigError("Partition: requires C > 1");
    if (j_max < 1) throw ConfigError("Partition: j_max must be >= 1");
    plateau_ = std::max(1.0 / C, C / 2.0);
    zero_ = C;
}

double Partition::phi(double r) const {
    if (r <= plateau_) return 1.0;
    if (r >= zero_) return 0.0;
    return 1.0 - smoothstep01((r - plateau_) / (zero_ - plateau_));
}

double Partition::window(int j, double r) const {
    if (j < 0 || j > j_max_) throw ConfigError("Partition: block index out of range");
    if (j == 0) return psi_minus1(r);
    return psi(std::ldexp(r, -j));
}

std::pair<double, double> Partition::block_support(int j) const {
    if (j < 0 || j > j_max_) throw ConfigError("Partition: block index out of range");
    if (j == 0) return {0.0, 2.0 * zero_};
    return {std::ldexp(plateau_, j), std::ldexp(zero_, j + 1)};
}

Partition make_partition(double C, const Grid& grid) {
    if (!(C > 1.0)) throw ConfigError("make_partition: requires C > 1");
    const double ximax = grid.max_freq_abs();
    const int j_max = std::max(1, static_cast<int>(std::ceil(std::log2(ximax / C))) + 1);
    return Partition(C, j_max);
}

Symbol dyadic_piece(const Symbol& a, const Partition& part, int j) {
    if (j < 0 || j > part.j_max()) throw ConfigError("dyadic_piece: block index out of range");
    Partition p = part;
    Symbol inner = a;
    Symbol piece(a.grid(), a.params(),
                 [inner, p, j](const Vec2& x, const Vec2& xi) -> cplx {
                     const double w = p.window(j, std::hypot(xi[0], xi[1]));
                     if (w == 0.0) return cplx(0.0);
                     return inner(x, xi) * w;
                 },
                 a.family_tag() + "#block" + std::to_string(j), a.family_params(),
                 a.low_freq_cutoff());
    const auto [lo, hi] = part.block_support(j);
    return piece.with_support(std::max(lo, a.support_lo()), std::min(hi, a.support_hi()));
}

GridFunction apply_block(const Symbol& a, const Partition& part, int j, const GridFunction& u,
                         bool dual) {
    const Symbol piece = dyadic_piece(a, part, j);
    return dual ? apply_dual(piece, u) : apply_kn(piece, u);
}

}  // namespace pdolab
