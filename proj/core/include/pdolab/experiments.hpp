#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdolab/config.hpp"
#include "pdolab/csv.hpp"
#include "pdolab/grid.hpp"
#include "pdolab/symbols.hpp"
#include "pdolab/weights.hpp"

namespace pdolab {

enum class ExperimentKind { sharp, weighted, weak11, atom_lp, molecule, opnorm };

/// Parsed experiment configuration.  `m` explicit overrides `m_offset`; with
/// m absent the order is critical_order(tag, ...) + m_offset per operator
/// clause.  `op` is "direct", "dual" or "both"; tags bound to a single
/// operator reject the other.
struct ExperimentConfig {
    ExperimentKind kind;
    std::string tag;
    int dim = 1;
    int points = 64;
    double length = two_pi;
    std::string symbol = "multiplier_oscillatory:1";
    std::string weight = "const:1";
    double p = 2.0;
    double r = 2.0;
    double eps = 0.5;
    double rho = 0.5;
    double delta = 0.0;
    std::optional<double> m;
    double m_offset = 0.0;
    bool rough = false;
    int ensemble = 8;
    std::uint64_t seed = 1;
    std::string op = "both";
    bool refine = true;
    double partition_C = 2.0;
    bool audit = true;

    // atom experiments
    double atom_q = 2.0;
    int atom_t = 0;  // 0 = smallest even integer > n/p
    std::vector<double> scale_divisors = {4.0, 8.0, 16.0};
    int atoms_per_scale = 4;

    std::string csv_path;
    std::string svg_path;

    std::vector<std::pair<std::string, std::string>> echo;  // sorted key=value

    static ExperimentConfig parse(KeyValueConfig& kv, ExperimentKind kind);
};

struct ExperimentReport {
    std::string tag;
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, double>> summary;

    CsvTable to_csv() const;
    double summary_value(const std::string& key) const;
};

/// Ratio study LHS/RHS per member and point for the sharp-maximal bounds
/// (tags th2, th3, th5); RHS floored at 1e-12 * ||f||_inf, floored points counted.
ExperimentReport sharp_ratio_experiment(const ExperimentConfig& cfg);

/// ||T u||_{L^p_w} / ||u||_{L^p_w} ratios (tags weight2, weight1); the weight's
/// A_{p/r} constant is recorded in the summary.
ExperimentReport weighted_norm_experiment(const ExperimentConfig& cfg);

/// weak-L^1 quasinorm of T u over ||u||_{L^1_w} (tag weight3); records a1_constant.
ExperimentReport weak11_experiment(const ExperimentConfig& cfg);

/// integral |T a_Q|^p for atoms across cube scales (tag th1); summary reports
/// the max/min spread per operator.
ExperimentReport atom_lp_experiment(const ExperimentConfig& cfg);

/// Molecule functionals of T*_a a_Q over a geometric ladder of cube sides with
/// log-log slope fits; requires a symbol vanishing for |xi| <= 1.
ExperimentReport molecule_scaling_experiment(const ExperimentConfig& cfg);

/// Unweighted operator-norm ratio study (tags lp1 direct, lp2 dual).
ExperimentReport lp_operatornorm_experiment(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Summary recomputation from stored rows (used in-run and by `report`).
std::vector<std::pair<std::string, double>> summary_from_rows(
    const std::string& tag, const std::vector<std::string>& columns,
    const std::vector<std::vector<std::string>>& rows);

/// Per-member band-limited random field: one coefficient per lattice mode with
/// |j| <= N/4 (index norm), keyed by (seed, signed mode index) so a mode keeps
/// its coefficient under refinement; normalized to ||f||_2 = 1.
GridFunction band_limited_random(const Grid& g, std::uint64_t member_seed);

/// Writes the report's SVG plot if cfg.svg_path is set.
void maybe_write_svg(const ExperimentConfig& cfg, const ExperimentReport& rep);

namespace detail {

/// Ratio row value with the degenerate-input contract: a zero-norm member is
/// an error row (ratio undefined), not a zero ratio.
struct RatioOutcome {
    bool ok;
    double ratio;
};
RatioOutcome norm_ratio(double numerator, double denominator);

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace detail

}  // namespace pdolab
