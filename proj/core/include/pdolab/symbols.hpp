#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pdolab/grid.hpp"

namespace pdolab {

/// Declared class parameters of a symbol: |D_x^beta D_xi^alpha a| <=
/// C <xi>^{m - rho|alpha| + delta|beta|}.  rough = true claims only sup-norm
/// bounds in x (no x-derivative rows in seminorm reports).
struct SymbolClassParams {
    double m = 0.0;
    double rho = 1.0;   // in [0,1]
    double delta = 0.0; // in [0,1)
    bool rough = false;

    void validate() const;
};

/// <xi> = (1 + |xi|^2)^{1/2}.
double japanese_bracket(const Vec2& xi);

/// Smooth cutoff: 0 for |xi| <= 1, 1 for |xi| >= 2, exp(-1/t)-type transition.
double low_freq_cut(double r);

/// Pointwise symbol a(x, xi) on grid x lattice, with declared class parameters.
/// Evaluation is closed-form in (x, xi); the stored grid fixes L (cut profiles
/// and spatial phase profiles are L-periodic) and the lattice used by
/// estimate_seminorms.  Immutable after construction.
class Symbol {
  public:
    using Evaluator = std::function<cplx(const Vec2& x, const Vec2& xi)>;

    Symbol(Grid grid, SymbolClassParams params, Evaluator eval, std::string family_tag,
           std::vector<double> family_params, bool low_freq_cutoff);

    cplx operator()(const Vec2& x, const Vec2& xi) const { return eval_(x, xi); }

    const Grid& grid() const { return grid_; }
    const SymbolClassParams& params() const { return params_; }
    const std::string& family_tag() const { return family_tag_; }
    const std::vector<double>& family_params() const { return family_params_; }
    bool low_freq_cutoff() const { return low_freq_cutoff_; }

    /// Radial frequency support hint [lo, hi]; quantization skips lattice
    /// points outside.  Unbounded by default.
    double support_lo() const { return support_lo_; }
    double support_hi() const { return support_hi_; }
    Symbol with_support(double lo, double hi) const;

  private:
    Grid grid_;
    SymbolClassParams params_;
    Evaluator eval_;
    std::string family_tag_;
    std::vector<double> family_params_;
    bool low_freq_cutoff_;
    double support_lo_ = 0.0;
    double support_hi_ = std::numeric_limits<double>::infinity();
};

/// Built-in families.  Tags and parameter lists:
///   constant:c                 a = c
///   power                      a = <xi>^m
///   multiplier_oscillatory:l   a = <xi>^m e^{i l <xi>^{1-rho}} cut(xi)
///   exotic:l,u                 a = <xi>^m e^{i l <xi>^{1-rho}} e^{i u sin(2 pi x_1/L) <xi>^{delta}} cut(xi)
///   random_smooth:seed         seeded variant of exotic with a random smooth
///                              periodic phase profile and random l,u
/// All tags except constant/power carry the low-frequency cutoff (a = 0 for |xi| <= 1).
Symbol make_family(const std::string& tag, const std::vector<double>& params,
                   const SymbolClassParams& class_params, const Grid& grid);

Symbol conjugate(const Symbol& a);
Symbol zero_symbol(const Grid& grid, const SymbolClassParams& cp);

struct SeminormEntry {
    MIdx alpha;  // xi-derivative order per axis
    MIdx beta;   // x-derivative order per axis
    double value;
};

struct SeminormReport {
    int max_order;
    double freq_floor;
    std::vector<SeminormEntry> entries;

    const SeminormEntry* find(const MIdx& alpha, const MIdx& beta) const;
    double max_value() const;
};

/// Estimates C_{alpha,beta} = sup_{x, |xi| >= freq_floor}
/// |D_x^beta D_xi^alpha a| / <xi>^{m - rho|alpha| + delta|beta|} by 2nd-order
/// centered finite differences (x-step h, xi-step 2*pi/L).  Meaningful only
/// while the grid resolves the symbol's oscillation; pair with a refined grid
/// to judge stability.  rough symbols report beta = 0 rows only.
SeminormReport estimate_seminorms(const Symbol& a, int max_order, double freq_floor = 1.0);

/// Multi-indices of R^dim with |alpha| <= s, graded lexicographic order.
std::vector<MIdx> multi_indices_up_to(int dim, int s);

}  // namespace pdolab
