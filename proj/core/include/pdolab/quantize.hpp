#pragma once

#include <vector>

#include "pdolab/grid.hpp"
#include "pdolab/symbols.hpp"

namespace pdolab {

/// T_a u(x_k) = L^{-n} sum_j e^{i x_k.xi_j} a(x_k, xi_j) u_hat(xi_j).
GridFunction apply_kn(const Symbol& a, const GridFunction& u);

/// T*_a u(x) = L^{-n} sum_j e^{i x.xi_j} [ h^n sum_k e^{-i x_k.xi_j} a(x_k, xi_j) u(x_k) ].
GridFunction apply_dual(const Symbol& a, const GridFunction& u);

/// Dense kernel K[x_k][x_m] = L^{-n} sum_j e^{i(x_k-x_m).xi_j} a(x_k, xi_j);
/// the dual variant evaluates the symbol at x_m instead.  Guarded to N^n <= 4096.
struct KernelMatrix {
    Grid grid;
    std::vector<cplx> entries;  // row-major, (N^n)^2

    explicit KernelMatrix(const Grid& g);
    std::size_t order() const { return grid.size(); }
    cplx at(std::size_t row, std::size_t col) const { return entries[row * order() + col]; }
};

KernelMatrix kernel(const Symbol& a, bool dual);

/// (K u)(x_k) * h^n; reproduces apply_kn/apply_dual for the matching kernel.
GridFunction apply_kernel(const KernelMatrix& K, const GridFunction& u);

}  // namespace pdolab
