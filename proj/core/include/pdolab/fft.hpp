#pragma once

#include <vector>

#include "pdolab/common.hpp"

namespace pdolab {

class Grid;

namespace detail {

/// Unnormalized multi-dimensional DFT over the grid layout:
///   forward:  out[t] = sum_k v[k] e^{-2 pi i <t,k>/N}
///   inverse:  out[k] = sum_t v[t] e^{+2 pi i <t,k>/N}
/// Radix-2 along power-of-two axes, direct summation otherwise.
void dft_nd(std::vector<cplx>& v, const Grid& g, bool inverse);

}  // namespace detail

}  // namespace pdolab
