// pdolab command line: symbol verification, quantization, dyadic decomposition
// and the inequality experiments, driven by key=value config files.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "pdolab/critical.hpp"
#include "pdolab/csv.hpp"
#include "pdolab/experiments.hpp"
#include "pdolab/hardy.hpp"
#include "pdolab/lpaley.hpp"
#include "pdolab/quantize.hpp"
#include "pdolab/svg.hpp"

using namespace pdolab;

namespace {

Grid grid_from(KeyValueConfig& kv) {
    const int n = static_cast<int>(kv.get_int("n", 1));
    const int N = static_cast<int>(kv.get_int("N", 64));
    const double L = kv.get_double("L", two_pi);
    return Grid(n, N, L);
}

Symbol symbol_from(KeyValueConfig& kv, const Grid& g) {
    const SymbolSpec ss = parse_symbol_spec(kv.get_string("symbol"));
    SymbolClassParams cp;
    cp.m = ss.m.value_or(kv.get_double("m", 0.0));
    cp.rho = ss.rho.value_or(kv.get_double("rho", 1.0));
    cp.delta = ss.delta.value_or(kv.get_double("delta", 0.0));
    cp.rough = ss.rough.value_or(kv.get_bool("rough", false));
    return make_family(ss.tag, ss.params, cp, g);
}

GridFunction input_from(KeyValueConfig& kv, const Grid& g) {
    const std::string spec = kv.get_string("input", "random:1");
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "random") return band_limited_random(g, rest.empty() ? 1 : std::stoull(rest));
    if (kind == "tone") {
        GridFunction u(g);
        double j0 = 1, j1 = 0;
        if (!rest.empty()) std::sscanf(rest.c_str(), "%lf,%lf", &j0, &j1);
        const double step = two_pi / g.side_length();
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Vec2 x = g.point(k);
            u.values[k] = std::polar(1.0, step * (j0 * x[0] + j1 * x[1]));
        }
        return u;
    }
    if (kind == "atom") {
        const AtomSpec as = parse_atom_spec(spec);
        const double c = g.side_length() / 2.0;
        const Cube cube{{c, g.dim() == 2 ? c : 0.0}, as.l};
        return make_atom(as.p, as.q, as.s, cube, as.seed, g).values;
    }
    throw ConfigError("input spec must be random:<seed>, tone:<j0[,j1]> or atom:...");
}

int run_verify_symbol(const std::string& path) {
    KeyValueConfig kv = KeyValueConfig::from_file(path);
    const Grid g = grid_from(kv);
    const int max_order = static_cast<int>(kv.get_int("max_order", 2));
    const double freq_floor = kv.get_double("freq_floor", 1.0);
    const std::string csv = kv.get_string("csv", "");
    const SymbolSpec ss = parse_symbol_spec(kv.get_string("symbol"));
    SymbolClassParams cp;
    cp.m = ss.m.value_or(kv.get_double("m", 0.0));
    cp.rho = ss.rho.value_or(kv.get_double("rho", 1.0));
    cp.delta = ss.delta.value_or(kv.get_double("delta", 0.0));
    cp.rough = ss.rough.value_or(kv.get_bool("rough", false));
    kv.finish();

    const Symbol a = make_family(ss.tag, ss.params, cp, g);
    const Symbol a2 = make_family(ss.tag, ss.params, cp, g.refined());
    const SeminormReport rep = estimate_seminorms(a, max_order, freq_floor);
    const SeminormReport rep2 = estimate_seminorms(a2, max_order, freq_floor);

    CsvTable t;
    t.add_meta("symbol", ss.tag);
    t.add_meta("m", cp.m);
    t.add_meta("rho", cp.rho);
    t.add_meta("delta", cp.delta);
    t.add_meta("N", static_cast<double>(g.points_per_axis()));
    t.columns = {"alpha0", "alpha1", "beta0", "beta1", "C", "C_refined", "rel_change", "stable"};
    double worst = 0.0;
    for (const auto& e : rep.entries) {
        const auto* e2 = rep2.find(e.alpha, e.beta);
        const double rel = e.value > 1e-12 ? std::abs(e2->value - e.value) / e.value : 0.0;
        worst = std::max(worst, rel);
        t.rows.push_back({std::to_string(e.alpha[0]), std::to_string(e.alpha[1]),
                          std::to_string(e.beta[0]), std::to_string(e.beta[1]), fmt17(e.value),
                          fmt17(e2->value), fmt17(rel), rel < 0.10 ? "1" : "0"});
    }
    t.add_meta("max_rel_change", worst);
    t.add_meta("stable_all", worst < 0.10 ? 1.0 : 0.0);

    std::printf("seminorm estimates for '%s' (N=%d vs %d), max relative change %.3g -> %s\n",
                ss.tag.c_str(), g.points_per_axis(), 2 * g.points_per_axis(), worst,
                worst < 0.10 ? "stable" : "NOT stable");
    for (const auto& row : t.rows)
        std::printf("  alpha=(%s,%s) beta=(%s,%s)  C=%s  refined=%s\n", row[0].c_str(),
                    row[1].c_str(), row[2].c_str(), row[3].c_str(), row[4].c_str(), row[5].c_str());
    if (!csv.empty()) t.write(csv);
    return 0;
}

int run_quantize(const std::string& path) {
    KeyValueConfig kv = KeyValueConfig::from_file(path);
    const Grid g = grid_from(kv);
    const Symbol a = symbol_from(kv, g);
    const GridFunction u = input_from(kv, g);
    const std::string op = kv.get_string("operator", "direct");
    const std::string out = kv.get_string("out", "");
    const std::string kernel_out = kv.get_string("export_kernel", "");
    kv.finish();

    const GridFunction tu = op == "dual" ? apply_dual(a, u) : apply_kn(a, u);
    std::printf("quantize: %s operator, N=%d, ||u||_2=%s, ||Tu||_2=%s\n", op.c_str(),
                g.points_per_axis(), fmt17(lp_norm(u, 2.0)).c_str(),
                fmt17(lp_norm(tu, 2.0)).c_str());
    if (!out.empty()) write_grid_function(out, tu);
    if (!kernel_out.empty()) write_kernel(kernel_out, kernel(a, op == "dual"));
    return 0;
}

int run_decompose(const std::string& path) {
    KeyValueConfig kv = KeyValueConfig::from_file(path);
    const Grid g = grid_from(kv);
    const Symbol a = symbol_from(kv, g);
    const GridFunction u = input_from(kv, g);
    const double C = kv.get_double("C", 2.0);
    const std::string op = kv.get_string("operator", "direct");
    const std::string csv = kv.get_string("csv", "");
    kv.finish();

    const Partition part = make_partition(C, g);
    const bool dual = op == "dual";

    double partition_dev = 0.0;
    for (std::size_t t = 0; t < g.size(); ++t) {
        double sum = 0.0;
        for (int j = 0; j <= part.j_max(); ++j) sum += part.window(j, g.freq_abs(t));
        partition_dev = std::max(partition_dev, std::abs(sum - 1.0));
    }

    CsvTable table;
    table.add_meta("C", C);
    table.add_meta("j_max", static_cast<double>(part.j_max()));
    table.add_meta("partition_max_deviation", partition_dev);
    table.columns = {"j", "support_lo", "support_hi", "block_l2"};

    GridFunction sum(g);
    for (int j = 0; j <= part.j_max(); ++j) {
        const GridFunction bj = apply_block(a, part, j, u, dual);
        for (std::size_t k = 0; k < g.size(); ++k) sum.values[k] += bj.values[k];
        const auto [lo, hi] = part.block_support(j);
        table.rows.push_back({std::to_string(j), fmt17(lo), fmt17(hi), fmt17(lp_norm(bj, 2.0))});
    }
    const GridFunction whole = dual ? apply_dual(a, u) : apply_kn(a, u);
    double err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
        err = std::max(err, std::abs(sum.values[k] - whole.values[k]));
    table.add_meta("reconstruction_max_error", err);

    std::printf("decompose: %d blocks, partition deviation %.3g, reconstruction error %.3g\n",
                part.j_max() + 1, partition_dev, err);
    if (!csv.empty()) table.write(csv);
    return 0;
}

int run_experiment_cmd(const std::string& path, ExperimentKind kind) {
    KeyValueConfig kv = KeyValueConfig::from_file(path);
    const ExperimentConfig cfg = ExperimentConfig::parse(kv, kind);
    const ExperimentReport rep = run_experiment(cfg);
    std::printf("experiment %s: %zu rows\n", rep.tag.c_str(), rep.rows.size());
    for (const auto& [k, v] : rep.summary) std::printf("  %s = %s\n", k.c_str(), fmt17(v).c_str());
    if (cfg.csv_path.empty())
        std::fputs("  (no csv= path configured; results not persisted)\n", stdout);
    return 0;
}

int run_report(const std::string& path, const std::string& svg) {
    const CsvTable t = CsvTable::read(path);
    const std::string* tag = t.find_meta("tag");
    const auto summary = summary_from_rows(tag ? *tag : "", t.columns, t.rows);
    std::printf("report for %s (%zu rows)\n", path.c_str(), t.rows.size());
    bool all_match = true;
    for (const auto& [k, v] : summary) {
        const std::string* stored = t.find_meta("summary." + k);
        const bool match = stored && *stored == fmt17(v);
        all_match = all_match && match;
        std::printf("  %s = %s%s\n", k.c_str(), fmt17(v).c_str(),
                    stored ? (match ? "" : "  [differs from stored!]") : "  [not stored]");
    }
    if (!svg.empty()) {
        SvgPlot plot;
        plot.title = "summary of " + path;
        plot.xlabel = "entry";
        plot.ylabel = "value";
        SvgPlot::Series s;
        s.label = "summary";
        double i = 0.0;
        for (const auto& [k, v] : summary) s.points.emplace_back(i++, v);
        plot.series.push_back(std::move(s));
        plot.write(svg);
    }
    if (!all_match) throw NumericalError("stored summary does not match the rows");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-differential operator laboratory on the discretized torus"};
    app.require_subcommand(1);

    std::string config, report_csv, report_svg;

    auto* verify = app.add_subcommand("verify-symbol", "estimate symbol class seminorms");
    verify->add_option("config", config, "key=value config file")->required();
    auto* quant = app.add_subcommand("quantize", "apply the operator or its dual to an input");
    quant->add_option("config", config, "key=value config file")->required();
    auto* decomp = app.add_subcommand("decompose", "dyadic block decomposition study");
    decomp->add_option("config", config, "key=value config file")->required();

    const std::pair<const char*, ExperimentKind> experiment_cmds[] = {
        {"sharp", ExperimentKind::sharp},       {"weighted", ExperimentKind::weighted},
        {"weak11", ExperimentKind::weak11},     {"atom-lp", ExperimentKind::atom_lp},
        {"molecule", ExperimentKind::molecule}, {"opnorm", ExperimentKind::opnorm},
    };
    for (const auto& [name, kind] : experiment_cmds)
        app.add_subcommand(name, "run the experiment described by the config")
            ->add_option("config", config, "key=value config file")
            ->required();

    auto* report = app.add_subcommand("report", "recompute and print a stored report's summary");
    report->add_option("csv", report_csv, "experiment CSV file")->required();
    report->add_option("--svg", report_svg, "write a summary plot");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return run_verify_symbol(config);
        if (quant->parsed()) return run_quantize(config);
        if (decomp->parsed()) return run_decompose(config);
        for (const auto& [name, kind] : experiment_cmds)
            if (app.get_subcommand(name)->parsed()) return run_experiment_cmd(config, kind);
        if (report->parsed()) return run_report(report_csv, report_svg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
