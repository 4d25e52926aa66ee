#pragma once

#include <string>
#include <vector>

#include "pdolab/grid.hpp"
#include "pdolab/maximal.hpp"

namespace pdolab {

/// Nonnegative grid function used as a measure density.  omega(E) is computed
/// with the same h^n cell measure as lp_norm.
struct Weight {
    Grid grid;
    std::vector<double> values;
    std::string tag;

    Weight(const Grid& g, std::vector<double> v, std::string t);
};

Weight constant_weight(double c, const Grid& grid);

/// omega(x) = d(x,0)^a with d the periodic distance clamped below at h/2.
/// Requires a > -n.
Weight power_weight(double a, const Grid& grid);

/// Parses "power:a" or "const:c".
Weight parse_weight_spec(const std::string& spec, const Grid& grid);

/// sup over family cubes of (avg_Q w) * (avg_Q w^{1/(1-p)})^{p-1}, p > 1.
/// Returns +inf when the dual average diverges (zero weight values).
double ap_constant(const Weight& w, double p, const CubeFamily& fam);

/// sup_x Mw(x)/w(x) over the family-based maximal function.  Requires w > 0.
double a1_constant(const Weight& w, const CubeFamily& fam);

}  // namespace pdolab
