#pragma once

#include <cstddef>
#include <vector>

#include "pdolab/common.hpp"

namespace pdolab {

struct Weight;  // weights.hpp

/// Discretized torus [0,L)^n, n in {1,2}, N points per axis (even, >= 8).
///
/// Spatial points x_k = k*h with h = L/N.  The frequency lattice holds
/// xi_j = 2*pi*j/L for signed j in {-N/2,...,N/2-1} per axis, stored in DFT
/// order (storage index t maps to j = t for t < N/2, j = t-N otherwise), so
/// e^{i x_k xi_j} = e^{2 pi i k t / N} holds with storage indices directly.
class Grid {
  public:
    Grid(int dim, int points_per_axis, double side_length = two_pi);

    int dim() const { return dim_; }
    int points_per_axis() const { return n_; }
    double side_length() const { return length_; }
    double spacing() const { return length_ / n_; }
    std::size_t size() const { return size_; }

    /// Cell measure h^n.
    double cell_measure() const;

    std::size_t flatten(int i0, int i1 = 0) const {
        return dim_ == 1 ? static_cast<std::size_t>(i0)
                         : static_cast<std::size_t>(i0) * n_ + i1;
    }
    std::array<int, 2> unflatten(std::size_t flat) const {
        if (dim_ == 1) return {static_cast<int>(flat), 0};
        return {static_cast<int>(flat / n_), static_cast<int>(flat % n_)};
    }

    Vec2 point(std::size_t flat) const;

    /// Signed per-axis frequency indices of lattice storage slot `flat`.
    std::array<int, 2> freq_index(std::size_t flat) const;
    Vec2 freq(std::size_t flat) const;
    double freq_abs(std::size_t flat) const;
    /// Largest |xi| on the lattice (attained at j = -N/2 on every axis).
    double max_freq_abs() const;

    /// Difference a-b wrapped to [-L/2, L/2).
    double periodic_diff(double a, double b) const;
    double periodic_distance(const Vec2& a, const Vec2& b) const;

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.dim_ == b.dim_ && a.n_ == b.n_ && a.length_ == b.length_;
    }
    friend bool operator!=(const Grid& a, const Grid& b) { return !(a == b); }

    /// Same torus, twice the points per axis.
    Grid refined() const { return Grid(dim_, 2 * n_, length_); }

  private:
    int dim_;
    int n_;
    double length_;
    std::size_t size_;
};

/// Complex samples on the spatial grid, row-major axis order.
struct GridFunction {
    Grid grid;
    std::vector<cplx> values;

    explicit GridFunction(const Grid& g) : grid(g), values(g.size(), cplx(0.0)) {}
    GridFunction(const Grid& g, std::vector<cplx> v);
};

/// Complex coefficients on the frequency lattice (same storage layout).
struct Spectrum {
    Grid grid;
    std::vector<cplx> coeffs;

    explicit Spectrum(const Grid& g) : grid(g), coeffs(g.size(), cplx(0.0)) {}
    Spectrum(const Grid& g, std::vector<cplx> c);
};

/// Riemann-sum Fourier coefficients: u_hat(xi_j) = h^n sum_k u(x_k) e^{-i x_k.xi_j}.
/// Rejects non-finite input.
Spectrum forward_transform(const GridFunction& u);

/// u(x_k) = L^{-n} sum_j u_hat(xi_j) e^{i x_k.xi_j}; exact inverse of forward_transform.
GridFunction inverse_transform(const Spectrum& s);

/// (h^n sum_k |u_k|^p w_k)^{1/p}; w omitted means w == 1.  Quasinorm for 0<p<1.
double lp_norm(const GridFunction& u, double p);
double lp_norm(const GridFunction& u, double p, const Weight& w);

/// sup_{lambda>0} lambda * omega{|u|>lambda}^{1/p}, evaluated exactly on the
/// step distribution of |u| as max over distinct values v of v * omega{|u|>=v}^{1/p}.
double weak_lp_quasinorm(const GridFunction& u, double p);
double weak_lp_quasinorm(const GridFunction& u, double p, const Weight& w);

}  // namespace pdolab
