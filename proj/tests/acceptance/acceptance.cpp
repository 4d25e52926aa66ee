// Acceptance suite: runs every criterion end to end and prints one PASS/FAIL
// line each.  Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "pdolab/critical.hpp"
#include "pdolab/csv.hpp"
#include "pdolab/experiments.hpp"
#include "pdolab/hardy.hpp"
#include "pdolab/lpaley.hpp"
#include "pdolab/maximal.hpp"
#include "pdolab/quantize.hpp"
#include "pdolab/weights.hpp"

using namespace pdolab;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

GridFunction random_function(const Grid& g, std::uint64_t seed) {
    SplitMix64 rng(seed);
    GridFunction u(g);
    for (auto& v : u.values) v = cplx(rng.uniform_sym(), rng.uniform_sym());
    return u;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

GridFunction oracle_apply(const Symbol& a, const GridFunction& u, bool dual) {
    const Grid& g = u.grid;
    const double cell = g.cell_measure();
    double vol = g.side_length();
    if (g.dim() == 2) vol *= g.side_length();
    GridFunction out(g);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Vec2 x = g.point(i);
        cplx acc(0.0);
        for (std::size_t t = 0; t < g.size(); ++t) {
            const Vec2 xi = g.freq(t);
            cplx inner(0.0);
            for (std::size_t k = 0; k < g.size(); ++k) {
                const Vec2 y = g.point(k);
                inner += std::polar(1.0, -dot2(y, xi)) * (dual ? a(y, xi) : a(x, xi)) * u.values[k];
            }
            acc += std::polar(1.0, dot2(x, xi)) * inner * cell;
        }
        out.values[i] = acc / vol;
    }
    return out;
}

Symbol family(const Grid& g, const std::string& tag, std::vector<double> params, double m,
              double rho, double delta) {
    return make_family(tag, params, SymbolClassParams{m, rho, delta, false}, g);
}

ExperimentConfig make_cfg(const std::string& text, ExperimentKind kind) {
    KeyValueConfig kv = KeyValueConfig::from_string(text);
    return ExperimentConfig::parse(kv, kind);
}

// ---------------------------------------------------------------- criteria

Outcome c1_transform_quantization() {
    const Grid g64(1, 64, two_pi);
    const Symbol one = family(g64, "constant", {1.0}, 0.0, 1.0, 0.0);
    const GridFunction u = random_function(g64, 101);
    const double e_id = std::max(max_abs_diff(apply_kn(one, u).values, u.values),
                                 max_abs_diff(apply_dual(one, u).values, u.values));

    const Grid g32(1, 32, two_pi);
    const Symbol a = family(g32, "exotic", {1.0, 1.0}, -0.25, 0.5, 0.5);
    const GridFunction v = random_function(g32, 102);
    const double e_or = std::max(
        max_abs_diff(apply_kn(a, v).values, oracle_apply(a, v, false).values),
        max_abs_diff(apply_dual(a, v).values, oracle_apply(a, v, true).values));

    std::ostringstream os;
    os << "identity_err=" << e_id << " oracle_err=" << e_or;
    return {e_id <= 1e-12 && e_or <= 1e-10, os.str()};
}

Outcome c2_adjoint_kernel() {
    const Grid g(1, 32, two_pi);
    const Symbol fams[] = {
        family(g, "multiplier_oscillatory", {1.0}, -0.5, 0.5, 0.0),
        family(g, "exotic", {1.0, 1.0}, -0.25, 0.5, 0.5),
        family(g, "random_smooth", {12.0}, -0.25, 0.5, 0.3),
    };
    double worst = 0.0;
    for (const Symbol& a : fams) {
        const KernelMatrix kd = kernel(a, true);
        const KernelMatrix kc = kernel(conjugate(a), false);
        const std::size_t n = kd.order();
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                worst = std::max(worst, std::abs(kd.at(r, c) - std::conj(kc.at(c, r))));
    }
    std::ostringstream os;
    os << "max_adjoint_err=" << worst << " over 3 families";
    return {worst <= 1e-10, os.str()};
}

Outcome c3_littlewood_paley() {
    const Grid g(1, 64, two_pi);
    const Partition part = make_partition(2.0, g);
    double dev = 0.0;
    for (std::size_t t = 0; t < g.size(); ++t) {
        double sum = 0.0;
        for (int j = 0; j <= part.j_max(); ++j) sum += part.window(j, g.freq_abs(t));
        dev = std::max(dev, std::abs(sum - 1.0));
    }

    const Symbol a = family(g, "exotic", {1.0, 1.0}, -0.25, 0.5, 0.5);
    const GridFunction u = random_function(g, 103);
    double rec = 0.0;
    for (bool dual : {false, true}) {
        GridFunction sum(g);
        for (int j = 0; j <= part.j_max(); ++j) {
            const GridFunction bj = apply_block(a, part, j, u, dual);
            for (std::size_t k = 0; k < g.size(); ++k) sum.values[k] += bj.values[k];
        }
        const GridFunction whole = dual ? apply_dual(a, u) : apply_kn(a, u);
        rec = std::max(rec, max_abs_diff(sum.values, whole.values));
    }
    std::ostringstream os;
    os << "partition_dev=" << dev << " reconstruction_err=" << rec;
    return {dev <= 1e-12 && rec <= 1e-10, os.str()};
}

// 20-case corpus on N=16: exhaustive (scale, position, c) brute force.
Outcome c4_maximal_oracles() {
    const Grid g(1, 16, two_pi);
    const CubeFamily fam(g);
    const int N = 16;

    std::vector<GridFunction> corpus;
    auto add = [&](std::function<double(int)> f) {
        GridFunction u(g);
        for (int k = 0; k < N; ++k) u.values[k] = cplx(f(k), 0.0);
        corpus.push_back(std::move(u));
    };
    add([](int) { return 0.0; });
    add([](int) { return 2.5; });
    add([](int k) { return k == 5 ? 1.0 : 0.0; });
    add([](int k) { return k == 0 ? -3.0 : 0.0; });
    add([](int k) { return k >= 12 ? 1.0 : 0.0; });
    add([](int k) { return k < 8 ? 1.0 : -1.0; });
    add([](int k) { return k % 2 ? 1.0 : 0.0; });
    add([](int k) { return k % 2 ? 1.0 : -1.0; });
    add([](int k) { return static_cast<double>(k); });
    add([](int k) { return static_cast<double>(k % 4); });
    add([](int k) { return std::sin(two_pi * k / 16.0); });
    add([](int k) { return std::cos(two_pi * 3 * k / 16.0); });
    add([](int k) { return k == 3 || k == 11 ? 5.0 : 0.1; });
    add([](int k) { return std::abs(k - 8) < 3 ? 2.0 : 0.25; });
    add([](int k) { return std::pow(-1.0, k) * k; });
    for (std::uint64_t s : {11u, 22u, 33u, 44u, 55u}) {
        SplitMix64 rng(s);
        add([&rng](int) { return rng.uniform_sym() * 4.0; });
    }

    double worst = 0.0;
    for (const GridFunction& u : corpus) {
        const GridFunction m = hl_maximal(u, fam);
        const GridFunction m2 = maximal_p(u, 2.0, fam);
        const GridFunction sh = sharp_maximal(u, fam, SharpMode::median);
        for (int x = 0; x < N; ++x) {
            double b_hl = 0.0, b_m2 = 0.0, b_sh = 0.0;
            for (int sc = 0; sc < fam.num_scales(); ++sc) {
                const int w = fam.window(sc);
                for (int start = x - w + 1; start <= x; ++start) {
                    double s1 = 0.0, s2 = 0.0;
                    std::vector<double> cells(w);
                    for (int t = 0; t < w; ++t) {
                        const double v = u.values[((start + t) % N + N) % N].real();
                        cells[t] = v;
                        s1 += std::abs(v);
                        s2 += v * v;
                    }
                    b_hl = std::max(b_hl, s1 / w);
                    b_m2 = std::max(b_m2, std::sqrt(s2 / w));
                    double inf = std::numeric_limits<double>::infinity();
                    for (double c : cells) {
                        double acc = 0.0;
                        for (double v : cells) acc += std::abs(v - c);
                        inf = std::min(inf, acc / w);
                    }
                    b_sh = std::max(b_sh, inf);
                }
            }
            worst = std::max({worst, std::abs(m.values[x].real() - b_hl),
                              std::abs(m2.values[x].real() - b_m2),
                              std::abs(sh.values[x].real() - b_sh)});
        }
    }
    std::ostringstream os;
    os << "corpus=" << corpus.size() << " max_abs_err=" << worst;
    return {corpus.size() == 20 && worst <= 1e-12, os.str()};
}

Outcome c5_ap_constants() {
    const Grid g(1, 8, two_pi);
    const CubeFamily fam(g);

    const bool unit_ok = ap_constant(constant_weight(1.0, g), 2.0, fam) == 1.0 &&
                         ap_constant(constant_weight(1.0, g), 1.5, fam) == 1.0;

    std::vector<double> tv(g.size());
    for (std::size_t k = 0; k < tv.size(); ++k) tv[k] = k % 3 == 0 ? 4.0 : 0.5;
    const Weight w(g, tv, "two-valued");
    const double p = 2.0;
    double brute = 0.0;
    for (int sc = 0; sc < fam.num_scales(); ++sc) {
        const int win = fam.window(sc);
        for (int start = 0; start < 8; ++start) {
            double s1 = 0.0, s2 = 0.0;
            for (int t = 0; t < win; ++t) {
                const double v = w.values[(start + t) % 8];
                s1 += v;
                s2 += std::pow(v, 1.0 / (1.0 - p));
            }
            brute = std::max(brute, (s1 / win) * std::pow(s2 / win, p - 1.0));
        }
    }
    const double lib = ap_constant(w, p, fam);
    const double enum_err = std::abs(lib - brute);

    // scale invariance, bitwise with a power-of-two factor
    std::vector<double> scaled = tv;
    for (auto& x : scaled) x *= 1024.0;
    const bool scale_exact = ap_constant(Weight(g, scaled, "s"), p, fam) == lib;

    std::ostringstream os;
    os << "unit_exact=" << unit_ok << " enum_err=" << enum_err << " scale_exact=" << scale_exact;
    return {unit_ok && enum_err <= 1e-12 && scale_exact, os.str()};
}

Outcome c6_atoms() {
    const Grid g(1, 128, two_pi);
    double worst_moment = 0.0, worst_size = 0.0;
    int count = 0;
    const double p_list[] = {0.7, 1.0};
    const int s_list[] = {0, 2, 4};
    for (int i = 0; count < 50; ++i) {
        const double p = p_list[i % 2];
        const int s = s_list[(i / 2) % 3];
        const int cells = 16 + 8 * (i % 3);
        const double c0 = (8 + (i % 5)) * g.spacing() + cells * g.spacing() / 2.0;
        const Cube cube{{c0, 0.0}, cells * g.spacing()};
        const Atom atom = make_atom(p, 2.0, s, cube, 1000 + i, g);
        ++count;

        double sup = 0.0;
        for (const auto& v : atom.values.values) sup = std::max(sup, std::abs(v));
        const double measure = atom.cube.side;
        for (const cplx& m : moment_vector(atom.values, s, atom.cube.center))
            worst_moment = std::max(worst_moment, std::abs(m) / (sup * measure));

        const double target = std::pow(measure, 0.5 - 1.0 / p);
        worst_size = std::max(worst_size,
                              std::abs(lp_norm(atom.values, 2.0) - target) / target);
    }
    std::ostringstream os;
    os << "atoms=" << count << " max_rel_moment=" << worst_moment
       << " max_rel_size_err=" << worst_size;
    return {worst_moment <= 1e-10 && worst_size <= 1e-12, os.str()};
}

Outcome ratio_refinement(const ExperimentReport& rep, double limit) {
    const double factor = rep.summary_value("refinement_factor");
    bool finite = std::isfinite(factor);
    for (const auto& [k, v] : rep.summary)
        if (k.rfind("max_ratio.", 0) == 0) finite = finite && std::isfinite(v) && v > 0.0;
    std::ostringstream os;
    os << "refinement_factor=" << factor;
    for (const auto& [k, v] : rep.summary)
        if (k.rfind("max_ratio.", 0) == 0) os << " " << k << "=" << v;
    return {finite && factor <= limit, os.str()};
}

Outcome c7_th2() {
    const auto cfg = make_cfg(
        "tag=th2\nn=1\nN=512\nrho=0.5\ndelta=0\np=2\nm=-0.25\nensemble=20\n"
        "operator=direct\nsymbol=multiplier_oscillatory:1\nseed=20260808\n",
        ExperimentKind::sharp);
    return ratio_refinement(sharp_ratio_experiment(cfg), 2.0);
}

Outcome c8_th3() {
    const auto cfg = make_cfg(
        "tag=th3\nn=1\nN=512\nrho=0.5\ndelta=0.7\nm=-0.5\neps=0.5\nensemble=20\n"
        "operator=both\nsymbol=exotic:1,1\nseed=20260809\n",
        ExperimentKind::sharp);
    return ratio_refinement(sharp_ratio_experiment(cfg), 2.0);
}

Outcome c9_weak11() {
    const auto cfg = make_cfg(
        "tag=weight3\nn=1\nN=512\nrho=0.5\ndelta=0.7\nm=-0.5\nweight=power:0.3\nensemble=20\n"
        "operator=both\nsymbol=exotic:1,1\nseed=20260810\n",
        ExperimentKind::weak11);
    const ExperimentReport rep = weak11_experiment(cfg);
    bool a1_recorded = false;
    double a1 = 0.0;
    for (const auto& [k, v] : rep.provenance)
        if (k.rfind("a1_constant.", 0) == 0) {
            a1_recorded = true;
            a1 = std::strtod(v.c_str(), nullptr);
        }
    Outcome o = ratio_refinement(rep, 2.0);
    std::ostringstream os;
    os << o.detail << " a1_recorded=" << a1_recorded << " (a1=" << a1 << ")";
    return {o.pass && a1_recorded, os.str()};
}

Outcome c10_th1_atoms() {
    const auto cfg = make_cfg(
        "tag=th1\nn=1\nN=512\nrho=0.5\ndelta=0\np=0.8\nscales=4,8,16\natoms_per_scale=4\n"
        "operator=dual\nsymbol=multiplier_oscillatory:1\nseed=20260811\n",
        ExperimentKind::atom_lp);
    // m defaults to critical_order(th1, dual clause false) = -n(1-rho)(1/p-1/2)
    const ExperimentReport rep = atom_lp_experiment(cfg);
    const double spread = rep.summary_value("spread.dual");
    std::ostringstream os;
    os << "atoms=" << rep.rows.size() << " spread=" << spread
       << " max=" << rep.summary_value("max_value.dual")
       << " min=" << rep.summary_value("min_value.dual");
    return {rep.rows.size() == 12 && std::isfinite(spread) && spread <= 10.0, os.str()};
}

Outcome c11_molecule_scaling() {
    const auto cfg = make_cfg(
        "tag=th1\nn=1\nN=512\nrho=0.5\ndelta=0\np=0.8\nt=4\nscales=4,8,16,32\natoms_per_scale=3\n"
        "symbol=multiplier_oscillatory:1\nseed=20260812\n",
        ExperimentKind::molecule);
    const ExperimentReport rep = molecule_scaling_experiment(cfg);
    const double slope = rep.summary_value("slope_norm_l1");
    const double expected = 0.5 * (1.0 - 1.0 / 0.8);  // rho (n - n/p)
    const double moment_rel = rep.summary_value("moment_rel_max");
    std::ostringstream os;
    os << "slope=" << slope << " expected=" << expected << " |diff|=" << std::abs(slope - expected)
       << " moment_rel_max=" << moment_rel;
    return {std::abs(slope - expected) <= 0.35 && moment_rel <= 1e-8, os.str()};
}

std::string strip_timestamp(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# timestamp=", 0) != 0) out << line << "\n";
    return out.str();
}

Outcome c12_determinism() {
    const std::string text =
        "tag=th2\nn=1\nN=64\nrho=0.5\ndelta=0\np=2\nensemble=4\noperator=direct\n"
        "symbol=multiplier_oscillatory:1\nseed=4242\n";
    const auto cfg1 = make_cfg(text, ExperimentKind::sharp);
    const auto cfg2 = make_cfg(text, ExperimentKind::sharp);
    const std::string a = strip_timestamp(sharp_ratio_experiment(cfg1).to_csv().to_string());
    const std::string b = strip_timestamp(sharp_ratio_experiment(cfg2).to_csv().to_string());
    std::ostringstream os;
    os << "payload_bytes=" << a.size() << " identical=" << (a == b);
    return {!a.empty() && a == b, os.str()};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double time_limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1. transform/quantization exactness", 11.0, c1_transform_quantization},
        {"2. adjoint-kernel identity (3 families)", 30.0, c2_adjoint_kernel},
        {"3. dyadic partition and block reconstruction", 30.0, c3_littlewood_paley},
        {"4. maximal operators equal exhaustive brute force", 10.0, c4_maximal_oracles},
        {"5. A_p constants: unit weight, enumeration, scaling", 5.0, c5_ap_constants},
        {"6. atom invariants across 50 seeded atoms", 10.0, c6_atoms},
        {"7. th2 sharp-ratio refinement stability", 300.0, c7_th2},
        {"8. th3 eps-sharp refinement stability (both operators)", 300.0, c8_th3},
        {"9. weight3 weak-(1,1) refinement stability", 300.0, c9_weak11},
        {"10. th1 atom image uniform boundedness", 300.0, c10_th1_atoms},
        {"11. molecule scaling law and moment residuals", 300.0, c11_molecule_scaling},
        {"12. byte-identical reruns", 60.0, c12_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o{false, ""};
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.time_limit_s;
        const bool pass = o.pass && in_time;
        failures += pass ? 0 : 1;
        std::printf("[%s] %s  (%s) [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                    secs, in_time ? "" : " OVER TIME LIMIT");
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
