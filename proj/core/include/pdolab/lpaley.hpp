#pragma once

#include "pdolab/grid.hpp"
#include "pdolab/quantize.hpp"
#include "pdolab/symbols.hpp"

namespace pdolab {

/// Dyadic radial partition of unity on the frequency lattice:
///   psi_{-1}(xi) + sum_{j>=1} psi(2^{-j} xi) = 1,
/// built as psi_{-1} = phi(|xi|/2), psi = phi(|xi|/2) - phi(|xi|),
/// phi == 1 on [0,a], == 0 on [b,inf) with a = max(1/C, C/2), b = C
/// (exp(-1/t)-type transition).  supp psi_{-1} lies in {|xi| <= 2C} and
/// supp psi(2^{-j}.) in the annulus C^{-1} 2^j <= |xi| <= C 2^{j+1}.
class Partition {
  public:
    Partition(double C, int j_max);

    double psi_minus1(double r) const { return phi(r / 2.0); }
    double psi(double r) const { return phi(r / 2.0) - phi(r); }
    /// Window of block j at radius r: j = 0 is psi_{-1}, j >= 1 is psi(2^{-j} r).
    double window(int j, double r) const;

    double C() const { return C_; }
    int j_max() const { return j_max_; }

    /// Radial frequency support [lo, hi] of block j's window.
    std::pair<double, double> block_support(int j) const;

  private:
    double phi(double r) const;

    double C_;
    double plateau_;  // a
    double zero_;     // b
    int j_max_;
};

/// Builds the partition for this grid; j_max = ceil(log2(|xi|_max / C)) + 1
/// so the telescoping sum equals 1 at every lattice point.
Partition make_partition(double C, const Grid& grid);

/// a_j(x,xi): block 0 multiplies by psi_{-1}, block j >= 1 by psi(2^{-j} xi).
/// The result carries the block's radial support so quantization can skip
/// frequencies outside it.
Symbol dyadic_piece(const Symbol& a, const Partition& part, int j);

/// T_j u (dual = false) or T*_j u (dual = true) via quantize on a_j.
GridFunction apply_block(const Symbol& a, const Partition& part, int j, const GridFunction& u,
                         bool dual);

}  // namespace pdolab
