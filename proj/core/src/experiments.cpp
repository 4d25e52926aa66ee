#include "pdolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "pdolab/critical.hpp"
#include "pdolab/hardy.hpp"
#include "pdolab/maximal.hpp"
#include "pdolab/quantize.hpp"
#include "pdolab/svg.hpp"

namespace pdolab {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

const std::set<std::string>& tags_for(ExperimentKind kind) {
    static const std::set<std::string> sharp{"th2", "th3", "th5"};
    static const std::set<std::string> weighted{"weight2", "weight1"};
    static const std::set<std::string> weak{"weight3"};
    static const std::set<std::string> atom{"th1", "th6"};
    static const std::set<std::string> opnorm{"lp1", "lp2"};
    switch (kind) {
        case ExperimentKind::sharp: return sharp;
        case ExperimentKind::weighted: return weighted;
        case ExperimentKind::weak11: return weak;
        case ExperimentKind::atom_lp:
        case ExperimentKind::molecule: return atom;
        case ExperimentKind::opnorm: return opnorm;
    }
    throw ConfigError("unknown experiment kind");
}

std::string default_tag(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::sharp: return "th2";
        case ExperimentKind::weighted: return "weight2";
        case ExperimentKind::weak11: return "weight3";
        case ExperimentKind::atom_lp: return "th1";
        case ExperimentKind::molecule: return "th1";
        case ExperimentKind::opnorm: return "lp1";
    }
    return "th2";
}

// Operators a tag governs, as dual flags (false = direct T_a, true = dual T*_a).
std::vector<bool> allowed_ops(const std::string& tag) {
    if (tag == "th5" || tag == "weight1" || tag == "lp2") return {true};
    if (tag == "lp1") return {false};
    return {false, true};
}

// Clause selector for critical_order: for th1/th6 the FIRST clause governs the
// dual operator, so the flag inverts there.
bool clause_for(const std::string& tag, bool op_dual) {
    if (tag == "th1" || tag == "th6") return !op_dual;
    return op_dual;
}

double resolve_order(const ExperimentConfig& cfg, bool op_dual) {
    if (cfg.m) return *cfg.m;
    return critical_order(cfg.tag, cfg.dim, cfg.p, cfg.r, cfg.rho, cfg.delta,
                          clause_for(cfg.tag, op_dual)) +
           cfg.m_offset;
}

Symbol build_symbol(const ExperimentConfig& cfg, const Grid& grid, double m_resolved) {
    const SymbolSpec ss = parse_symbol_spec(cfg.symbol);
    if (ss.m || ss.rho || ss.delta || ss.rough)
        throw ConfigError("experiment symbol spec: class exponents come from the config keys "
                          "(rho=, delta=, m=/m_offset=), not the symbol string");
    SymbolClassParams cp{m_resolved, cfg.rho, cfg.delta, cfg.rough};
    return make_family(ss.tag, ss.params, cp, grid);
}

std::vector<bool> resolve_ops(const ExperimentConfig& cfg) {
    const auto allowed = allowed_ops(cfg.tag);
    std::vector<bool> ops;
    if (cfg.op == "both") {
        ops = allowed;
    } else if (cfg.op == "direct" || cfg.op == "dual") {
        const bool want = cfg.op == "dual";
        for (bool b : allowed)
            if (b == want) ops.push_back(b);
        if (ops.empty())
            throw ConfigError("tag '" + cfg.tag + "' does not govern the " + cfg.op + " operator");
    } else {
        throw ConfigError("operator must be direct, dual or both");
    }
    return ops;
}

std::string op_name(bool dual) { return dual ? "dual" : "direct"; }

std::vector<int> resolutions(const ExperimentConfig& cfg) {
    if (cfg.refine) return {cfg.points, 2 * cfg.points};
    return {cfg.points};
}

GridFunction apply_op(const Symbol& a, const GridFunction& u, bool dual) {
    return dual ? apply_dual(a, u) : apply_kn(a, u);
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double parse_cell(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

// ---- per-row computations, shared by the runs and the row audits ----

struct SharpRow {
    double ratio = 0.0;
    long long floored = 0;
    double lhs_max = 0.0, rhs_max = 0.0;
};

SharpRow compute_sharp_row(const ExperimentConfig& cfg, int res, std::uint64_t mseed, bool op_dual) {
    const Grid grid(cfg.dim, res, cfg.length);
    const CubeFamily fam(grid);
    const GridFunction f = band_limited_random(grid, mseed);
    const Symbol a = build_symbol(cfg, grid, resolve_order(cfg, op_dual));
    const GridFunction tf = apply_op(a, f, op_dual);

    GridFunction lhs(grid), rhs(grid);
    if (cfg.tag == "th3") {
        lhs = sharp_maximal_eps(tf, cfg.eps, fam);
        rhs = hl_maximal(f, fam);
    } else if (cfg.tag == "th5") {
        lhs = sharp_maximal(tf, fam, SharpMode::mean);
        rhs = hl_maximal(f, fam);
    } else {  // th2
        lhs = sharp_maximal(tf, fam, SharpMode::mean);
        rhs = maximal_p(f, cfg.p, fam);
    }

    double fmax = 0.0;
    for (const auto& v : f.values) fmax = std::max(fmax, std::abs(v));
    const double floor = 1e-12 * fmax;

    SharpRow out;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double l = lhs.values[k].real();
        double r = rhs.values[k].real();
        if (r < floor) {
            r = floor;
            ++out.floored;
        }
        out.lhs_max = std::max(out.lhs_max, l);
        out.rhs_max = std::max(out.rhs_max, rhs.values[k].real());
        if (r > 0.0) out.ratio = std::max(out.ratio, l / r);
    }
    return out;
}

struct NormRow {
    bool ok = true;
    double ratio = 0.0;
    double denom = 0.0, numer = 0.0;
};

NormRow compute_norm_row(const ExperimentConfig& cfg, int res, std::uint64_t mseed, bool op_dual,
                         bool weighted, bool weak) {
    const Grid grid(cfg.dim, res, cfg.length);
    const GridFunction f = band_limited_random(grid, mseed);
    const Symbol a = build_symbol(cfg, grid, resolve_order(cfg, op_dual));
    const GridFunction tf = apply_op(a, f, op_dual);
    const double lebesgue_p = weak ? 1.0 : cfg.p;

    NormRow out;
    if (weighted) {
        const Weight w = parse_weight_spec(cfg.weight, grid);
        out.denom = lp_norm(f, lebesgue_p, w);
        out.numer = weak ? weak_lp_quasinorm(tf, 1.0, w) : lp_norm(tf, lebesgue_p, w);
    } else {
        out.denom = lp_norm(f, lebesgue_p);
        out.numer = lp_norm(tf, lebesgue_p);
    }
    const auto rr = detail::norm_ratio(out.numer, out.denom);
    out.ok = rr.ok;
    out.ratio = rr.ratio;
    return out;
}

struct AtomRowId {
    int atom_index;
    double scale_div;
    std::uint64_t atom_seed;
};

AtomRowId atom_row_id(const ExperimentConfig& cfg, int atom_index) {
    const int per = cfg.atoms_per_scale;
    const int scale_pos = atom_index / per;
    if (scale_pos >= static_cast<int>(cfg.scale_divisors.size()))
        throw ConfigError("atom index out of range");
    return {atom_index, cfg.scale_divisors[scale_pos], mix_seed(cfg.seed, atom_index, 0xa70u)};
}

int resolve_atom_t(const ExperimentConfig& cfg) {
    if (cfg.atom_t > 0) {
        if (cfg.atom_t % 2 != 0 || cfg.atom_t <= cfg.dim / cfg.p)
            throw ConfigError("t must be an even integer > n/p");
        return cfg.atom_t;
    }
    int t = 2;
    while (t <= cfg.dim / cfg.p) t += 2;
    return t;
}

Atom build_experiment_atom(const ExperimentConfig& cfg, const Grid& grid, double scale_div,
                           std::uint64_t atom_seed, int s) {
    const int N = grid.points_per_axis();
    const double wreal = N / scale_div;
    const int w = static_cast<int>(std::lround(wreal));
    if (std::abs(wreal - w) > 1e-9 || w < 1)
        throw ConfigError("scale divisor must divide the point count");
    SplitMix64 rng(mix_seed(atom_seed, 0xce27e2ull));
    Cube cube;
    for (int d = 0; d < 2; ++d) {
        const int si = static_cast<int>(rng.next() % static_cast<std::uint64_t>(N));
        cube.center[d] = d < grid.dim() ? (si + w / 2.0) * grid.spacing() : 0.0;
    }
    cube.side = w * grid.spacing();
    return make_atom(cfg.p, cfg.atom_q, s, cube, atom_seed, grid);
}

struct AtomLpRow {
    double value = 0.0;
    double side = 0.0;
    double atom_norm_q = 0.0;
};

AtomLpRow compute_atom_lp_row(const ExperimentConfig& cfg, int res, int atom_index, bool op_dual) {
    const Grid grid(cfg.dim, res, cfg.length);
    const auto id = atom_row_id(cfg, atom_index);
    const int t = resolve_atom_t(cfg);
    const Atom atom = build_experiment_atom(cfg, grid, id.scale_div, id.atom_seed, 2 * t);
    const Symbol a = build_symbol(cfg, grid, resolve_order(cfg, op_dual));
    const GridFunction ta = apply_op(a, atom.values, op_dual);
    AtomLpRow out;
    out.side = atom.cube.side;
    out.atom_norm_q = lp_norm(atom.values, cfg.atom_q);
    out.value = std::pow(lp_norm(ta, cfg.p), cfg.p);
    return out;
}

struct MoleculeRow {
    double side = 0.0;
    MoleculeReport rep{};
    double moment_rel = 0.0;
};

MoleculeRow compute_molecule_row(const ExperimentConfig& cfg, int res, int atom_index) {
    const Grid grid(cfg.dim, res, cfg.length);
    const Symbol a = build_symbol(cfg, grid, resolve_order(cfg, /*op_dual=*/true));
    if (!a.low_freq_cutoff())
        throw ConfigError("molecule experiment requires a symbol vanishing for |xi| <= 1");

    const auto id = atom_row_id(cfg, atom_index);
    const int t = resolve_atom_t(cfg);
    const Atom atom = build_experiment_atom(cfg, grid, id.scale_div, id.atom_seed, 2 * t);
    const GridFunction ta = apply_dual(a, atom.values);

    const int n = cfg.dim;
    const int s = static_cast<int>(std::floor(n * (1.0 / cfg.p - 1.0)));
    const double eps = static_cast<double>(t) / n - 0.5;

    MoleculeRow out;
    out.side = atom.cube.side;
    out.rep = molecule_report(ta, cfg.p, 1.0, s, eps, t, atom.cube.center);

    const auto moments = moment_vector(ta, s, atom.cube.center);
    const auto midx = multi_indices_up_to(n, s);
    const double L = cfg.length;
    const double base = out.rep.norm_q > 0.0 ? out.rep.norm_q : 1.0;
    for (std::size_t i = 0; i < moments.size(); ++i) {
        const double scale = base * std::pow(L, midx_order(midx[i]));
        out.moment_rel = std::max(out.moment_rel, std::abs(moments[i]) / scale);
    }
    return out;
}

// ---- report assembly ----

void fill_provenance(ExperimentReport& rep, const ExperimentConfig& cfg) {
    rep.provenance.emplace_back("code_version", version_string);
    rep.provenance.emplace_back("tag", cfg.tag);
    for (const auto& [k, v] : cfg.echo) rep.provenance.emplace_back("cfg." + k, v);
    bool any_super = false;
    for (bool op_dual : resolve_ops(cfg)) {
        const double crit = critical_order(cfg.tag, cfg.dim, cfg.p, cfg.r, cfg.rho, cfg.delta,
                                           clause_for(cfg.tag, op_dual));
        const double m_used = resolve_order(cfg, op_dual);
        rep.provenance.emplace_back("m." + op_name(op_dual), fmt17(m_used));
        rep.provenance.emplace_back("critical." + op_name(op_dual), fmt17(crit));
        any_super = any_super || m_used > crit + 1e-12;
    }
    if (any_super) rep.provenance.emplace_back("supercritical", "1");
}

void finish_report(ExperimentReport& rep, const ExperimentConfig& cfg) {
    rep.summary = summary_from_rows(rep.tag, rep.columns, rep.rows);
    maybe_write_svg(cfg, rep);
    if (!cfg.csv_path.empty()) rep.to_csv().write(cfg.csv_path);
}

// Recomputes the main value of 3 seeded row picks from the row's stored
// identifiers; a mismatch is an internal failure.
void audit_rows(const ExperimentConfig& cfg, const ExperimentReport& rep) {
    if (!cfg.audit || rep.rows.empty()) return;
    SplitMix64 rng(mix_seed(cfg.seed, 0x0a0d17ull));
    const auto col = [&](const char* name) {
        for (std::size_t c = 0; c < rep.columns.size(); ++c)
            if (rep.columns[c] == name) return static_cast<int>(c);
        return -1;
    };
    const int c_n = col("N");
    const int c_op = col("op");
    for (int pick = 0; pick < 3; ++pick) {
        const auto& row = rep.rows[rng.next() % rep.rows.size()];
        const int res = c_n >= 0 ? static_cast<int>(parse_cell(row[c_n])) : cfg.points;
        const bool op_dual = c_op >= 0 && row[c_op] == "dual";
        std::string expect, got;
        switch (cfg.kind) {
            case ExperimentKind::sharp: {
                const std::uint64_t mseed = std::stoull(row[col("seed")]);
                expect = row[col("ratio")];
                got = fmt17(compute_sharp_row(cfg, res, mseed, op_dual).ratio);
                break;
            }
            case ExperimentKind::weighted:
            case ExperimentKind::weak11:
            case ExperimentKind::opnorm: {
                const std::uint64_t mseed = std::stoull(row[col("seed")]);
                const bool weighted = cfg.kind != ExperimentKind::opnorm;
                const bool weak = cfg.kind == ExperimentKind::weak11;
                expect = row[col("ratio")];
                got = fmt17(compute_norm_row(cfg, res, mseed, op_dual, weighted, weak).ratio);
                break;
            }
            case ExperimentKind::atom_lp: {
                const int idx = static_cast<int>(parse_cell(row[col("atom")]));
                expect = row[col("value")];
                got = fmt17(compute_atom_lp_row(cfg, res, idx, op_dual).value);
                break;
            }
            case ExperimentKind::molecule: {
                const int idx = static_cast<int>(parse_cell(row[col("atom")]));
                expect = row[col("norm_l1")];
                got = fmt17(compute_molecule_row(cfg, res, idx).rep.norm_q);
                break;
            }
        }
        if (expect != got)
            throw NumericalError("report row audit failed: stored " + expect + " recomputed " + got);
    }
}

}  // namespace

namespace detail {

RatioOutcome norm_ratio(double numerator, double denominator) {
    if (!(denominator > 0.0)) return {false, 0.0};
    return {true, numerator / denominator};
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw ConfigError("ls_slope: need at least 2 points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw ConfigError("ls_slope: degenerate abscissae");
    return sxy / sxx;
}

}  // namespace detail

ExperimentConfig ExperimentConfig::parse(KeyValueConfig& kv, ExperimentKind kind) {
    ExperimentConfig c;
    c.kind = kind;
    c.tag = lower(kv.get_string("tag", default_tag(kind)));
    if (!tags_for(kind).count(c.tag))
        throw ConfigError("tag '" + c.tag + "' does not belong to this experiment");

    c.dim = static_cast<int>(kv.get_int("n", 1));
    c.points = static_cast<int>(kv.get_int("N", 64));
    c.length = kv.get_double("L", two_pi);
    c.symbol = kv.get_string("symbol", c.symbol);
    c.rho = kv.get_double("rho", c.rho);
    c.delta = kv.get_double("delta", c.delta);
    c.m = kv.get_double_opt("m");
    c.m_offset = kv.get_double("m_offset", 0.0);
    if (c.m && kv.has("m_offset"))
        throw ConfigError("config: give either m or m_offset, not both");
    c.rough = kv.get_bool("rough", c.tag == "th5" || c.tag == "weight1");
    c.seed = kv.get_seed("seed", 1);
    c.op = lower(kv.get_string("operator", "both"));
    c.refine = kv.get_bool("refine", kind != ExperimentKind::atom_lp && kind != ExperimentKind::molecule);
    c.audit = kv.get_bool("audit", true);
    c.csv_path = kv.get_string("csv", "");
    c.svg_path = kv.get_string("svg", "");

    switch (kind) {
        case ExperimentKind::sharp:
            c.p = kv.get_double("p", 2.0);
            c.eps = kv.get_double("eps", 0.5);
            c.ensemble = static_cast<int>(kv.get_int("ensemble", 8));
            if (c.tag == "th3" && !(c.eps > 0.0 && c.eps < 1.0))
                throw ConfigError("th3 requires eps in (0,1)");
            break;
        case ExperimentKind::weighted:
            c.p = kv.get_double("p", 3.0);
            c.r = kv.get_double("r", 2.0);
            c.weight = kv.get_string("weight", "power:0.5");
            c.ensemble = static_cast<int>(kv.get_int("ensemble", 8));
            if (c.tag == "weight2" && !(c.p > c.r))
                throw ConfigError("weight2 requires r < p (weight class A_{p/r})");
            if (c.tag == "weight1" && !(c.p > 1.0)) throw ConfigError("weight1 requires p > 1");
            break;
        case ExperimentKind::weak11:
            c.p = 1.0;
            c.weight = kv.get_string("weight", "power:0.3");
            c.ensemble = static_cast<int>(kv.get_int("ensemble", 8));
            break;
        case ExperimentKind::atom_lp:
        case ExperimentKind::molecule:
            c.p = kv.get_double("p", 0.8);
            c.atom_q = kv.get_double("q", 2.0);
            c.atom_t = static_cast<int>(kv.get_int("t", 0));
            c.scale_divisors = kv.get_list("scales", kind == ExperimentKind::molecule
                                                         ? std::vector<double>{4, 8, 16, 32}
                                                         : std::vector<double>{4, 8, 16});
            c.atoms_per_scale = static_cast<int>(kv.get_int("atoms_per_scale",
                                                            kind == ExperimentKind::molecule ? 3 : 4));
            c.ensemble = static_cast<int>(c.scale_divisors.size()) * c.atoms_per_scale;
            if (kind == ExperimentKind::molecule && !(c.p > 0.0 && c.p < 1.0))
                throw ConfigError("the molecule experiment requires 0 < p < 1");
            if (kind == ExperimentKind::molecule && c.op == "direct")
                throw ConfigError("the molecule experiment studies the dual operator only");
            if (!(c.p > 0.0 && c.p <= 1.0))
                throw ConfigError("atom experiments require 0 < p <= 1");
            break;
        case ExperimentKind::opnorm:
            c.p = kv.get_double("p", 4.0);
            c.ensemble = static_cast<int>(kv.get_int("ensemble", 8));
            break;
    }
    c.echo = kv.sorted_pairs();
    kv.finish();

    if (c.ensemble < 1) throw ConfigError("ensemble must be >= 1");
    return c;
}

CsvTable ExperimentReport::to_csv() const {
    CsvTable t;
    for (const auto& [k, v] : provenance) t.add_meta(k, v);
    for (const auto& [k, v] : summary) t.add_meta("summary." + k, v);
    t.columns = columns;
    t.rows = rows;
    return t;
}

double ExperimentReport::summary_value(const std::string& key) const {
    for (const auto& [k, v] : summary)
        if (k == key) return v;
    throw ConfigError("missing summary entry '" + key + "'");
}

GridFunction band_limited_random(const Grid& g, std::uint64_t member_seed) {
    const int N = g.points_per_axis();
    const double cut2 = (N / 4.0) * (N / 4.0);
    Spectrum s(g);
    for (std::size_t t = 0; t < g.size(); ++t) {
        const auto j = g.freq_index(t);
        const double j2 = static_cast<double>(j[0]) * j[0] + static_cast<double>(j[1]) * j[1];
        if (j2 > cut2) continue;
        const std::uint64_t key =
            (static_cast<std::uint64_t>(static_cast<std::uint32_t>(j[0])) << 32) |
            static_cast<std::uint64_t>(static_cast<std::uint32_t>(j[1]));
        SplitMix64 rng(mix_seed(member_seed, key, 0xb11dull));
        s.coeffs[t] = cplx(rng.uniform_sym(), rng.uniform_sym());
    }
    GridFunction f = inverse_transform(s);
    const double nrm = lp_norm(f, 2.0);
    if (nrm > 0.0)
        for (auto& v : f.values) v /= nrm;
    return f;
}

std::vector<std::pair<std::string, double>> summary_from_rows(
    [[maybe_unused]] const std::string& tag, const std::vector<std::string>& columns,
    const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::pair<std::string, double>> out;
    const auto col = [&](const char* name) {
        for (std::size_t c = 0; c < columns.size(); ++c)
            if (columns[c] == name) return static_cast<int>(c);
        return -1;
    };

    const int c_ratio = col("ratio");
    const int c_value = col("value");
    const int c_mol = col("norm_l1");

    if (c_ratio >= 0) {
        const int c_op = col("op");
        const int c_n = col("N");
        const int c_status = col("status");
        std::vector<std::string> ops;
        std::vector<int> ns;
        for (const auto& r : rows) {
            const std::string o = c_op >= 0 ? r[c_op] : "direct";
            if (std::find(ops.begin(), ops.end(), o) == ops.end()) ops.push_back(o);
            const int nn = c_n >= 0 ? static_cast<int>(parse_cell(r[c_n])) : 0;
            if (std::find(ns.begin(), ns.end(), nn) == ns.end()) ns.push_back(nn);
        }
        std::sort(ops.begin(), ops.end());
        std::sort(ns.begin(), ns.end());

        double overall_factor = 0.0;
        bool have_factor = false;
        for (const auto& o : ops) {
            std::vector<double> per_n_max;
            for (int nn : ns) {
                std::vector<double> vals;
                for (const auto& r : rows) {
                    if (c_op >= 0 && r[c_op] != o) continue;
                    if (c_n >= 0 && static_cast<int>(parse_cell(r[c_n])) != nn) continue;
                    if (c_status >= 0 && r[c_status] != "ok") continue;
                    vals.push_back(parse_cell(r[c_ratio]));
                }
                if (vals.empty()) continue;
                const double mx = *std::max_element(vals.begin(), vals.end());
                per_n_max.push_back(mx);
                const std::string key = o + ".N" + std::to_string(nn);
                out.emplace_back("max_ratio." + key, mx);
                out.emplace_back("median_ratio." + key, median_of(vals));
            }
            if (per_n_max.size() >= 2) {
                const double lo = per_n_max.front(), hi = per_n_max.back();
                const double factor = lo > 0.0 ? hi / lo : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
                out.emplace_back("refinement_factor." + o, factor);
                overall_factor = std::max(overall_factor, factor);
                have_factor = true;
            }
        }
        if (have_factor) out.emplace_back("refinement_factor", overall_factor);
        return out;
    }

    if (c_value >= 0) {  // atom_lp
        const int c_op = col("op");
        std::vector<std::string> ops;
        for (const auto& r : rows)
            if (std::find(ops.begin(), ops.end(), r[c_op]) == ops.end()) ops.push_back(r[c_op]);
        std::sort(ops.begin(), ops.end());
        for (const auto& o : ops) {
            double mx = 0.0, mn = std::numeric_limits<double>::infinity();
            for (const auto& r : rows) {
                if (r[c_op] != o) continue;
                const double v = parse_cell(r[c_value]);
                mx = std::max(mx, v);
                mn = std::min(mn, v);
            }
            out.emplace_back("max_value." + o, mx);
            out.emplace_back("min_value." + o, mn);
            out.emplace_back("spread." + o,
                             mn > 0.0 ? mx / mn
                                      : (mx > 0.0 ? std::numeric_limits<double>::infinity() : 1.0));
        }
        return out;
    }

    if (c_mol >= 0) {  // molecule ladder
        const int c_side = col("side");
        const int c_alt = col("weighted_l1_alt");
        const int c_rel = col("moment_rel");
        // mean log per distinct side
        std::vector<double> sides;
        for (const auto& r : rows) {
            const double s = parse_cell(r[c_side]);
            if (std::find(sides.begin(), sides.end(), s) == sides.end()) sides.push_back(s);
        }
        std::sort(sides.begin(), sides.end());
        std::vector<double> lx, ly_norm, ly_alt;
        bool fit_ok = sides.size() >= 3;
        for (double s : sides) {
            double acc_n = 0.0, acc_a = 0.0;
            int cnt = 0;
            for (const auto& r : rows) {
                if (parse_cell(r[c_side]) != s) continue;
                const double vn = parse_cell(r[c_mol]);
                const double va = parse_cell(r[c_alt]);
                if (!(vn > 0.0) || !(va > 0.0)) {
                    fit_ok = false;
                    break;
                }
                acc_n += std::log(vn);
                acc_a += std::log(va);
                ++cnt;
            }
            if (!fit_ok) break;
            lx.push_back(std::log(s));
            ly_norm.push_back(acc_n / cnt);
            ly_alt.push_back(acc_a / cnt);
        }
        if (fit_ok) {
            out.emplace_back("slope_norm_l1", detail::ls_slope(lx, ly_norm));
            out.emplace_back("slope_weighted_l1_alt", detail::ls_slope(lx, ly_alt));
        }
        double rel = 0.0;
        for (const auto& r : rows) rel = std::max(rel, parse_cell(r[c_rel]));
        out.emplace_back("moment_rel_max", rel);
        return out;
    }
    return out;
}

ExperimentReport sharp_ratio_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind != ExperimentKind::sharp) throw ConfigError("config kind mismatch");
    ExperimentReport rep;
    rep.tag = cfg.tag;
    rep.columns = {"member", "seed", "op", "N", "ratio", "floored_points", "lhs_max", "rhs_max"};
    const auto ops = resolve_ops(cfg);
    for (int res : resolutions(cfg))
        for (int member = 0; member < cfg.ensemble; ++member) {
            const std::uint64_t mseed = mix_seed(cfg.seed, member);
            for (bool op_dual : ops) {
                const SharpRow r = compute_sharp_row(cfg, res, mseed, op_dual);
                rep.rows.push_back({std::to_string(member), std::to_string(mseed), op_name(op_dual),
                                    std::to_string(res), fmt17(r.ratio), std::to_string(r.floored),
                                    fmt17(r.lhs_max), fmt17(r.rhs_max)});
            }
        }
    fill_provenance(rep, cfg);
    finish_report(rep, cfg);
    audit_rows(cfg, rep);
    return rep;
}

namespace {

ExperimentReport norm_family_experiment(const ExperimentConfig& cfg, bool weighted, bool weak) {
    ExperimentReport rep;
    rep.tag = cfg.tag;
    rep.columns = {"member", "seed", "op", "N", "ratio", "norm_tu", "norm_u", "status"};
    const auto ops = resolve_ops(cfg);
    for (int res : resolutions(cfg)) {
        if (weighted) {
            const Grid grid(cfg.dim, res, cfg.length);
            const CubeFamily fam(grid);
            const Weight w = parse_weight_spec(cfg.weight, grid);
            if (weak) {
                rep.provenance.emplace_back("a1_constant.N" + std::to_string(res),
                                            fmt17(a1_constant(w, fam)));
            } else {
                const double ap_p = cfg.tag == "weight2" ? cfg.p / cfg.r : cfg.p;
                rep.provenance.emplace_back("ap_constant.p" + fmt17(ap_p) + ".N" + std::to_string(res),
                                            fmt17(ap_constant(w, ap_p, fam)));
            }
        }
        for (int member = 0; member < cfg.ensemble; ++member) {
            const std::uint64_t mseed = mix_seed(cfg.seed, member);
            for (bool op_dual : ops) {
                const NormRow r = compute_norm_row(cfg, res, mseed, op_dual, weighted, weak);
                rep.rows.push_back({std::to_string(member), std::to_string(mseed), op_name(op_dual),
                                    std::to_string(res), fmt17(r.ratio), fmt17(r.numer),
                                    fmt17(r.denom), r.ok ? "ok" : "error"});
            }
        }
    }
    fill_provenance(rep, cfg);
    finish_report(rep, cfg);
    audit_rows(cfg, rep);
    return rep;
}

}  // namespace

ExperimentReport weighted_norm_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind != ExperimentKind::weighted) throw ConfigError("config kind mismatch");
    return norm_family_experiment(cfg, /*weighted=*/true, /*weak=*/false);
}

ExperimentReport weak11_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind != ExperimentKind::weak11) throw ConfigError("config kind mismatch");
    return norm_family_experiment(cfg, /*weighted=*/true, /*weak=*/true);
}

ExperimentReport lp_operatornorm_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind != ExperimentKind::opnorm) throw ConfigError("config kind mismatch");
    return norm_family_experiment(cfg, /*weighted=*/false, /*weak=*/false);
}

ExperimentReport atom_lp_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind != ExperimentKind::atom_lp) throw ConfigError("config kind mismatch");
    ExperimentReport rep;
    rep.tag = cfg.tag;
    rep.columns = {"atom", "scale_div", "side", "seed", "op", "N", "value", "atom_norm_q"};
    const auto ops = resolve_ops(cfg);
    const int total = static_cast<int>(cfg.scale_divisors.size()) * cfg.atoms_per_scale;
    for (int res : resolutions(cfg))
        for (int idx = 0; idx < total; ++idx) {
            const auto id = atom_row_id(cfg, idx);
            for (bool op_dual : ops) {
                const AtomLpRow r = compute_atom_lp_row(cfg, res, idx, op_dual);
                rep.rows.push_back({std::to_string(idx), fmt17(id.scale_div), fmt17(r.side),
                                    std::to_string(id.atom_seed), op_name(op_dual),
                                    std::to_string(res), fmt17(r.value), fmt17(r.atom_norm_q)});
            }
        }
    fill_provenance(rep, cfg);
    finish_report(rep, cfg);
    audit_rows(cfg, rep);
    return rep;
}

ExperimentReport molecule_scaling_experiment(const ExperimentConfig& cfg) {
    if (cfg.kind != ExperimentKind::molecule) throw ConfigError("config kind mismatch");
    ExperimentReport rep;
    rep.tag = cfg.tag;
    rep.columns = {"atom",        "scale_div",       "side",
                   "seed",        "N",               "norm_l1",
                   "weighted_l1", "weighted_l1_alt", "product_as_written",
                   "product_classical", "moment_max", "moment_rel"};
    const int total = static_cast<int>(cfg.scale_divisors.size()) * cfg.atoms_per_scale;
    for (int res : resolutions(cfg))
        for (int idx = 0; idx < total; ++idx) {
            const auto id = atom_row_id(cfg, idx);
            const MoleculeRow r = compute_molecule_row(cfg, res, idx);
            rep.rows.push_back({std::to_string(idx), fmt17(id.scale_div), fmt17(r.side),
                                std::to_string(id.atom_seed), std::to_string(res),
                                fmt17(r.rep.norm_q), fmt17(r.rep.weighted_norm_q),
                                fmt17(r.rep.weighted_norm_q_alt), fmt17(r.rep.product_as_written),
                                fmt17(r.rep.product_classical), fmt17(r.rep.moment_max),
                                fmt17(r.moment_rel)});
        }
    fill_provenance(rep, cfg);
    const int t = resolve_atom_t(cfg);
    const double n = cfg.dim;
    rep.provenance.emplace_back("expected.slope_norm_l1", fmt17(cfg.rho * (n - n / cfg.p)));
    rep.provenance.emplace_back("expected.slope_weighted_l1_alt",
                                fmt17(cfg.rho * (t + n - n / cfg.p)));
    finish_report(rep, cfg);
    audit_rows(cfg, rep);
    return rep;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    switch (cfg.kind) {
        case ExperimentKind::sharp: return sharp_ratio_experiment(cfg);
        case ExperimentKind::weighted: return weighted_norm_experiment(cfg);
        case ExperimentKind::weak11: return weak11_experiment(cfg);
        case ExperimentKind::atom_lp: return atom_lp_experiment(cfg);
        case ExperimentKind::molecule: return molecule_scaling_experiment(cfg);
        case ExperimentKind::opnorm: return lp_operatornorm_experiment(cfg);
    }
    throw ConfigError("unknown experiment kind");
}

void maybe_write_svg(const ExperimentConfig& cfg, const ExperimentReport& rep) {
    if (cfg.svg_path.empty()) return;
    SvgPlot plot;
    const auto col = [&](const char* name) {
        for (std::size_t c = 0; c < rep.columns.size(); ++c)
            if (rep.columns[c] == name) return static_cast<int>(c);
        return -1;
    };

    if (col("ratio") >= 0) {
        plot.title = rep.tag + " max ratio vs N";
        plot.xlabel = "N";
        plot.ylabel = "max ratio";
        std::vector<std::string> keys;
        for (const auto& [k, v] : rep.summary)
            if (k.rfind("max_ratio.", 0) == 0) keys.push_back(k);
        // group "max_ratio.<op>.N<num>" keys by op
        std::vector<std::string> ops;
        for (const auto& k : keys) {
            const auto dot = k.find('.', 10);
            const std::string o = k.substr(10, dot - 10);
            if (std::find(ops.begin(), ops.end(), o) == ops.end()) ops.push_back(o);
        }
        for (const auto& o : ops) {
            SvgPlot::Series s;
            s.label = o;
            for (const auto& [k, v] : rep.summary) {
                if (k.rfind("max_ratio." + o + ".N", 0) != 0) continue;
                const double nn = std::strtod(k.c_str() + ("max_ratio." + o + ".N").size(), nullptr);
                s.points.emplace_back(nn, v);
            }
            plot.series.push_back(std::move(s));
        }
    } else if (col("value") >= 0) {
        plot.title = rep.tag + " atom image L^p mass vs cube side";
        plot.xlabel = "side";
        plot.ylabel = "value";
        plot.logx = plot.logy = true;
        const int cs = col("side"), cv = col("value"), co = col("op");
        std::vector<std::string> ops;
        for (const auto& r : rep.rows)
            if (std::find(ops.begin(), ops.end(), r[co]) == ops.end()) ops.push_back(r[co]);
        for (const auto& o : ops) {
            SvgPlot::Series s;
            s.label = o;
            s.line = false;
            for (const auto& r : rep.rows)
                if (r[co] == o) s.points.emplace_back(parse_cell(r[cs]), parse_cell(r[cv]));
            plot.series.push_back(std::move(s));
        }
    } else if (col("norm_l1") >= 0) {
        plot.title = rep.tag + " molecule functionals vs cube side";
        plot.xlabel = "side";
        plot.ylabel = "L1 functional";
        plot.logx = plot.logy = true;
        const int cs = col("side");
        for (const char* name : {"norm_l1", "weighted_l1_alt"}) {
            SvgPlot::Series s;
            s.label = name;
            s.line = false;
            for (const auto& r : rep.rows)
                s.points.emplace_back(parse_cell(r[cs]), parse_cell(r[col(name)]));
            plot.series.push_back(std::move(s));
        }
        for (const auto& [k, v] : rep.summary)
            if (k == "slope_norm_l1") {
                plot.with_fit = true;
                plot.fit_slope = v;
                // intercept in log10 coordinates through the first series mean
                double mx = 0.0, my = 0.0;
                int cnt = 0;
                for (const auto& [x, y] : plot.series[0].points) {
                    if (!(x > 0.0) || !(y > 0.0)) continue;
                    mx += std::log10(x);
                    my += std::log10(y);
                    ++cnt;
                }
                if (cnt > 0) plot.fit_intercept = my / cnt - v * mx / cnt;
            }
    }
    plot.write(cfg.svg_path);
}

}  // namespace pdolab
