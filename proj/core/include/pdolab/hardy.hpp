#pragma once

#include <cstdint>
#include <vector>

#include "pdolab/grid.hpp"

namespace pdolab {

/// Axis-aligned cube on the torus: center and side length (side a multiple of h).
struct Cube {
    Vec2 center;
    double side;
};

/// (p,q,s) atom: supported in `cube` (exact zeros outside), vanishing moments
/// about the cube center up to order s, and ||.||_q = |Q|^{1/q-1/p} with
/// equality by construction.  Deterministic in (params, seed).
struct Atom {
    GridFunction values;
    double p;
    double q;
    int s;
    Cube cube;
    std::uint64_t seed;
};

/// Requires 0 < p <= 1 <= q with p != q, s >= floor(n(1/p - 1)), and at least
/// s+2 grid points per cube axis so the moment projection is well posed.
Atom make_atom(double p, double q, int s, const Cube& cube, std::uint64_t seed, const Grid& grid);

/// h^n sum_k delta^alpha f(x_k), delta the periodic displacement from `center`,
/// for all |alpha| <= s in graded lexicographic order (s <= 6).
std::vector<cplx> moment_vector(const GridFunction& f, int s, const Vec2& center);

/// Molecule functionals of f about x0.  Norms are L^q with q in {1,2};
/// a0 = 1 - 1/p + eps and b0 = 1 - 1/q + eps.  weighted_norm uses the weight
/// |.-x0|^{n b0}; the alt variant uses the exponent-t weight |.-x0|^t
/// (equivalently b0_alt = t/n).  Both product conventions are reported:
/// exponents as written (a0, b0-a0) and the normalized pair (a0/b0, 1-a0/b0).
struct MoleculeReport {
    double p, q;
    int s;
    double eps;
    int t;
    double a0, b0, b0_alt;
    double norm_q;
    double weighted_norm_q;
    double weighted_norm_q_alt;
    double product_as_written;
    double product_classical;
    double moment_max;
};

MoleculeReport molecule_report(const GridFunction& f, double p, double q, int s, double eps, int t,
                               const Vec2& x0);

/// H^p quasinorm surrogate: || sup_t |f * phi_t| ||_p with phi a fixed smooth
/// bump of radius L/8 normalized to unit discrete integral, t over the dyadic
/// set {h 2^g : g = 0..log2 N}, convolutions via spectral multiplication.
double grand_maximal(const GridFunction& f, double p);

}  // namespace pdolab
