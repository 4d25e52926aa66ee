#pragma once

#include <vector>

#include "pdolab/grid.hpp"

namespace pdolab {

/// Grid-aligned cubes with dyadic side lengths l_g = h*2^g, g = 0..G,
/// G = floor(log2 N), at every grid position (periodic wrap).  Comparable to
/// the all-cubes supremum within a dimensional constant; every theorem check
/// built on this family is constant-agnostic.
class CubeFamily {
  public:
    explicit CubeFamily(const Grid& g);

    const Grid& grid() const { return grid_; }
    int num_scales() const { return num_scales_; }
    /// Points per axis of a cube at `scale` (2^scale).
    int window(int scale) const { return 1 << scale; }
    double side(int scale) const { return grid_.spacing() * window(scale); }

  private:
    Grid grid_;
    int num_scales_;
};

enum class SharpMode { median, mean };

/// Hardy-Littlewood maximal function over the family: sup of cube averages of
/// |u| over cubes containing x.  O(N^n) per scale via periodic prefix sums and
/// a monotone-deque sliding maximum.  Output is real-valued.
GridFunction hl_maximal(const GridFunction& u, const CubeFamily& fam);

/// M_p u = (M(|u|^p))^{1/p}.  Any p > 0 accepted.
GridFunction maximal_p(const GridFunction& u, double p, const CubeFamily& fam);

/// Fefferman-Stein sharp maximal: sup over cubes of inf_c avg_Q |u - c|.
/// median mode: exact discrete infimum (real input only; the minimizer is the
/// cube median).  mean mode: c = cube mean; on real input the result lies in
/// [exact, 2*exact] and complex input is allowed.
GridFunction sharp_maximal(const GridFunction& u, const CubeFamily& fam, SharpMode mode);

/// (M^sharp(|u|^eps))^{1/eps} with median mode on the real function |u|^eps, 0<eps<1.
GridFunction sharp_maximal_eps(const GridFunction& u, double eps, const CubeFamily& fam);

namespace detail {

/// Periodic sliding-window sums of width w along every axis (separable):
/// out[start] = sum over the window of w^n cells beginning at `start`.
std::vector<double> window_sums(const std::vector<double>& v, const Grid& g, int w);

/// out[x] = max over starts s in [x-w+1, x] (mod N, per axis) of in[s]:
/// maximum over all width-w windows containing x, given per-start values.
std::vector<double> max_over_covering_windows(const std::vector<double>& v, const Grid& g, int w);

}  // namespace detail

}  // namespace pdolab
