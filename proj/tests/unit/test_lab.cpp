#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pdolab/critical.hpp"
#include "pdolab/csv.hpp"
#include "pdolab/experiments.hpp"

using namespace pdolab;

namespace {

ExperimentConfig cfg_from(const std::string& text, ExperimentKind kind) {
    KeyValueConfig kv = KeyValueConfig::from_string(text);
    return ExperimentConfig::parse(kv, kind);
}

std::string strip_timestamp(const std::string& csv) {
    std::istringstream in(csv);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("# timestamp=", 0) != 0) out << line << "\n";
    return out.str();
}

}  // namespace

TEST_SUITE("lab") {

TEST_CASE("critical orders match the stated closed forms") {
    CHECK(critical_order("th2", 1, 2.0, 2.0, 0.5, 0.0, false) == doctest::Approx(-0.25));
    CHECK(critical_order("th3", 1, 2.0, 2.0, 1.0, 0.0, false) == 0.0);
    CHECK(critical_order("th1", 2, 1.0, 2.0, 0.0, 0.0, false) == doctest::Approx(-1.0));

    // penalty clauses
    CHECK(critical_order("th2", 1, 2.0, 2.0, 0.5, 0.7, true) ==
          doctest::Approx(-0.25 - 0.5 * 0.2));
    CHECK(critical_order("weight2", 1, 3.0, 2.0, 0.5, 0.0, false) == doctest::Approx(-0.25));
    CHECK(critical_order("lp1", 1, 4.0, 2.0, 0.5, 0.7, false) ==
          doctest::Approx(-0.5 * 0.25 - 0.2 / 4.0));
    CHECK(critical_order("lp2", 1, 4.0, 2.0, 0.5, 0.7, true) ==
          doctest::Approx(-0.5 * 0.25 - 0.2 * 0.5));
    CHECK(critical_order("weight3", 1, 1.0, 1.0, 0.5, 0.7, true) == doctest::Approx(-0.5));

    CHECK_THROWS_AS(critical_order("th2", 1, 3.0, 2.0, 0.5, 0.0, false), ConfigError);
    CHECK_THROWS_AS(critical_order("th5", 1, 2.0, 2.0, 0.5, 0.0, false), ConfigError);
    CHECK_THROWS_AS(critical_order("nope", 1, 2.0, 2.0, 0.5, 0.0, false), ConfigError);
}

TEST_CASE("config parsing: defaults, unknown keys, duplicate m modes") {
    auto cfg = cfg_from("tag=th2\nN=32\nensemble=2\nseed=9\n", ExperimentKind::sharp);
    CHECK(cfg.points == 32);
    CHECK(cfg.seed == 9);
    CHECK(cfg.refine);

    KeyValueConfig bad = KeyValueConfig::from_string("tag=th2\nbogus_key=1\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(bad, ExperimentKind::sharp), ConfigError);

    KeyValueConfig both = KeyValueConfig::from_string("tag=th2\nm=-0.3\nm_offset=0.1\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(both, ExperimentKind::sharp), ConfigError);

    KeyValueConfig wrongkind = KeyValueConfig::from_string("tag=weight2\n");
    CHECK_THROWS_AS(ExperimentConfig::parse(wrongkind, ExperimentKind::sharp), ConfigError);
}

TEST_CASE("m_offset = 0 reproduces the critical order") {
    auto cfg = cfg_from("tag=th2\nN=32\nensemble=1\nrho=0.5\ndelta=0\np=2\noperator=direct\n",
                        ExperimentKind::sharp);
    const ExperimentReport rep = sharp_ratio_experiment(cfg);
    bool found = false;
    for (const auto& [k, v] : rep.provenance)
        if (k == "m.direct") {
            CHECK(std::strtod(v.c_str(), nullptr) ==
                  doctest::Approx(critical_order("th2", 1, 2.0, 2.0, 0.5, 0.0, false)));
            found = true;
        }
    CHECK(found);
}

TEST_CASE("band-limited members are seeded, refinable and normalized") {
    const Grid g(1, 32, two_pi);
    const GridFunction f1 = band_limited_random(g, 5);
    const GridFunction f2 = band_limited_random(g, 5);
    const GridFunction f3 = band_limited_random(g, 6);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(f1.values[k] == f2.values[k]);
    double diff = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) diff += std::abs(f1.values[k] - f3.values[k]);
    CHECK(diff > 1e-6);
    CHECK(lp_norm(f1, 2.0) == doctest::Approx(1.0).epsilon(1e-12));

    // spectrum cutoff at N/4
    const Spectrum s = forward_transform(f1);
    for (std::size_t t = 0; t < g.size(); ++t) {
        const auto j = g.freq_index(t);
        if (j[0] * j[0] > 64) CHECK(std::abs(s.coeffs[t]) < 1e-12);
    }

    // a mode keeps its coefficient under refinement (up to the norm rescale)
    const Grid g2 = g.refined();
    const GridFunction f1r = band_limited_random(g2, 5);
    const Spectrum sr = forward_transform(f1r);
    const cplx c_coarse = forward_transform(f1).coeffs[3];
    std::size_t t_fine = 0;
    for (std::size_t t = 0; t < g2.size(); ++t)
        if (g2.freq_index(t)[0] == 3) t_fine = t;
    const cplx ratio = sr.coeffs[t_fine] / c_coarse;
    CHECK(std::abs(ratio.imag()) < 1e-9);  // same coefficient, real positive rescale
    CHECK(ratio.real() > 0.0);
}

TEST_CASE("zero symbol yields all-zero statistics") {
    auto cfg = cfg_from("tag=th2\nN=32\nensemble=2\nsymbol=constant:0\noperator=direct\nrefine=0\n",
                        ExperimentKind::sharp);
    cfg.m = -0.25;  // order irrelevant for the zero symbol
    const ExperimentReport rep = sharp_ratio_experiment(cfg);
    for (const auto& row : rep.rows) CHECK(std::strtod(row[4].c_str(), nullptr) == 0.0);
    CHECK(rep.summary_value("max_ratio.direct.N32") == 0.0);
}

TEST_CASE("identity symbol: sharp ratio bounded by 2, weighted and opnorm ratios equal 1") {
    {
        auto cfg = cfg_from(
            "tag=th2\nN=32\nensemble=3\nsymbol=constant:1\noperator=direct\nrefine=0\nm=0\n",
            ExperimentKind::sharp);
        const ExperimentReport rep = sharp_ratio_experiment(cfg);
        for (const auto& row : rep.rows)
            CHECK(std::strtod(row[4].c_str(), nullptr) <= 2.0 + 1e-9);
    }
    {
        auto cfg = cfg_from("tag=weight2\nN=32\nensemble=3\nsymbol=constant:1\nweight=power:0.5\n"
                            "p=3\nr=2\noperator=direct\nrefine=0\nm=0\n",
                            ExperimentKind::weighted);
        const ExperimentReport rep = weighted_norm_experiment(cfg);
        for (const auto& row : rep.rows)
            CHECK(std::strtod(row[4].c_str(), nullptr) == doctest::Approx(1.0).epsilon(1e-12));
    }
    {
        auto cfg = cfg_from("tag=lp1\nN=32\nensemble=3\nsymbol=constant:1\np=4\nrefine=0\nm=0\n",
                            ExperimentKind::opnorm);
        const ExperimentReport rep = lp_operatornorm_experiment(cfg);
        for (const auto& row : rep.rows)
            CHECK(std::strtod(row[4].c_str(), nullptr) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("multiplier at p = 2 is bounded by its sup (Parseval)") {
    auto cfg = cfg_from("tag=lp1\nN=64\nensemble=4\nsymbol=power\np=2\nrefine=0\n",
                        ExperimentKind::opnorm);
    // power family with m = critical(lp1, p=2) = 0 gives |a| <= 1
    const ExperimentReport rep = lp_operatornorm_experiment(cfg);
    for (const auto& row : rep.rows) CHECK(std::strtod(row[4].c_str(), nullptr) <= 1.0 + 1e-10);
}

TEST_CASE("weak quasinorm ratio of the identity stays below 1 (Chebyshev)") {
    auto cfg = cfg_from("tag=weight3\nN=32\nensemble=3\nsymbol=constant:1\nweight=power:0.3\n"
                        "operator=direct\nrefine=0\nm=0\nrho=0.5\ndelta=0\n",
                        ExperimentKind::weak11);
    const ExperimentReport rep = weak11_experiment(cfg);
    for (const auto& row : rep.rows)
        CHECK(std::strtod(row[4].c_str(), nullptr) <= 1.0 + 1e-12);
}

TEST_CASE("degenerate members produce error rows, not ratios") {
    CHECK_FALSE(detail::norm_ratio(1.0, 0.0).ok);
    CHECK(detail::norm_ratio(1.0, 2.0).ok);
    CHECK(detail::norm_ratio(1.0, 2.0).ratio == doctest::Approx(0.5));
}

TEST_CASE("atom-lp experiment: zero symbol gives zero values, spread of ones is 1") {
    auto cfg = cfg_from("tag=th1\nN=64\nsymbol=constant:0\np=0.8\nscales=4,8\natoms_per_scale=2\n"
                        "operator=dual\nm=0\n",
                        ExperimentKind::atom_lp);
    const ExperimentReport rep = atom_lp_experiment(cfg);
    for (const auto& row : rep.rows) CHECK(std::strtod(row[6].c_str(), nullptr) == 0.0);
    CHECK(rep.summary_value("spread.dual") == 1.0);
}

TEST_CASE("identity symbol on p = 1 atoms stays below the Hoelder bound") {
    auto cfg = cfg_from("tag=th1\nN=128\nsymbol=constant:1\np=1\nscales=4,8\natoms_per_scale=2\n"
                        "operator=dual\nm=0\n",
                        ExperimentKind::atom_lp);
    const ExperimentReport rep = atom_lp_experiment(cfg);
    // ||a_Q||_1 <= |Q|^{1/2} ||a_Q||_2 = 1 by the size normalization
    for (const auto& row : rep.rows) CHECK(std::strtod(row[6].c_str(), nullptr) <= 1.0 + 1e-10);
}

TEST_CASE("weighted and opnorm ratio studies are refinement-stable at critical order") {
    {
        auto cfg = cfg_from("tag=weight2\nN=256\nensemble=6\nrho=0.5\ndelta=0\np=3\nr=2\n"
                            "weight=power:0.5\noperator=direct\nsymbol=multiplier_oscillatory:1\n"
                            "seed=41\n",
                            ExperimentKind::weighted);
        const ExperimentReport rep = weighted_norm_experiment(cfg);
        CHECK(rep.summary_value("refinement_factor") <= 2.0);
    }
    {
        auto cfg = cfg_from("tag=lp1\nN=256\nensemble=6\nrho=0.5\ndelta=0.7\np=4\n"
                            "symbol=exotic:1,1\nseed=42\n",
                            ExperimentKind::opnorm);
        const ExperimentReport rep = lp_operatornorm_experiment(cfg);
        CHECK(rep.summary_value("refinement_factor") <= 2.0);
    }
}

TEST_CASE("molecule experiment: cutoff required, zero symbol yields no fit") {
    auto bad = cfg_from("tag=th1\nN=64\nsymbol=power\np=0.8\nscales=4,8,16\natoms_per_scale=1\nm=0\n",
                        ExperimentKind::molecule);
    CHECK_THROWS_AS(molecule_scaling_experiment(bad), ConfigError);

    auto zero = cfg_from(
        "tag=th1\nN=128\nsymbol=constant:0\np=0.8\nscales=4,8,16\natoms_per_scale=1\nm=0\n",
        ExperimentKind::molecule);
    const ExperimentReport rep = molecule_scaling_experiment(zero);
    for (const auto& [k, v] : rep.summary) CHECK(k != "slope_norm_l1");  // no fit on zeros
    CHECK(rep.summary_value("moment_rel_max") == 0.0);
}

TEST_CASE("molecule ladder with fewer than 3 scales emits no fit") {
    auto cfg = cfg_from("tag=th1\nN=64\nsymbol=multiplier_oscillatory:1\np=0.8\nrho=0.5\ndelta=0\n"
                        "scales=4,8\natoms_per_scale=1\n",
                        ExperimentKind::molecule);
    const ExperimentReport rep = molecule_scaling_experiment(cfg);
    for (const auto& [k, v] : rep.summary) CHECK(k.rfind("slope", 0) != 0);
}

TEST_CASE("reports are byte-identical across reruns (timestamp aside) and auditable") {
    const std::string text =
        "tag=th2\nN=32\nensemble=3\nrho=0.5\ndelta=0\np=2\noperator=direct\nseed=77\n";
    auto cfg1 = cfg_from(text, ExperimentKind::sharp);
    auto cfg2 = cfg_from(text, ExperimentKind::sharp);
    const std::string csv1 = sharp_ratio_experiment(cfg1).to_csv().to_string();
    const std::string csv2 = sharp_ratio_experiment(cfg2).to_csv().to_string();
    CHECK(strip_timestamp(csv1) == strip_timestamp(csv2));
}

TEST_CASE("summary is recomputable from the stored rows") {
    auto cfg = cfg_from("tag=th3\nN=32\nensemble=2\nrho=0.5\ndelta=0.7\neps=0.5\nseed=3\n",
                        ExperimentKind::sharp);
    const ExperimentReport rep = sharp_ratio_experiment(cfg);
    const CsvTable t = CsvTable::parse(rep.to_csv().to_string());
    const auto recomputed = summary_from_rows(rep.tag, t.columns, t.rows);
    REQUIRE(recomputed.size() == rep.summary.size());
    for (std::size_t i = 0; i < recomputed.size(); ++i) {
        CHECK(recomputed[i].first == rep.summary[i].first);
        CHECK(fmt17(recomputed[i].second) == fmt17(rep.summary[i].second));
    }
}

TEST_CASE("2-D experiments run end to end") {
    auto cfg = cfg_from("tag=th2\nn=2\nN=16\nensemble=2\nrho=0.5\ndelta=0\np=2\n"
                        "operator=direct\nsymbol=exotic:1,1\nrefine=0\nseed=8\n",
                        ExperimentKind::sharp);
    const ExperimentReport rep = sharp_ratio_experiment(cfg);
    REQUIRE(rep.rows.size() == 2);
    for (const auto& row : rep.rows) {
        const double ratio = std::strtod(row[4].c_str(), nullptr);
        CHECK(std::isfinite(ratio));
        CHECK(ratio > 0.0);
    }
}

TEST_CASE("symbol and atom spec strings parse") {
    const SymbolSpec s = parse_symbol_spec("exotic:1,0.5;m=-0.25,rho=0.5,delta=0.3");
    CHECK(s.tag == "exotic");
    REQUIRE(s.params.size() == 2);
    CHECK(s.params[1] == 0.5);
    CHECK(*s.m == doctest::Approx(-0.25));
    CHECK(*s.delta == doctest::Approx(0.3));
    CHECK_THROWS_AS(parse_symbol_spec("exotic:1;oops=2"), ConfigError);

    const AtomSpec a = parse_atom_spec("atom:p=0.8,q=2,s=4,l=1.5707963,seed=12");
    CHECK(a.p == doctest::Approx(0.8));
    CHECK(a.s == 4);
    CHECK(a.seed == 12);
    CHECK_THROWS_AS(parse_atom_spec("atom:p=0.8"), ConfigError);
}

TEST_CASE("csv round trip preserves payload text") {
    CsvTable t;
    t.add_meta("alpha", 0.1);
    t.columns = {"a", "b"};
    t.rows = {{fmt17(1.0 / 3.0), "x"}, {fmt17(-2.5e-17), "y"}};
    const std::string text = t.to_string(false);
    const CsvTable back = CsvTable::parse(text);
    CHECK(back.columns == t.columns);
    CHECK(back.rows == t.rows);
    CHECK(*back.find_meta("alpha") == fmt17(0.1));
    // 17 significant digits round-trip exactly
    CHECK(std::strtod(back.rows[0][0].c_str(), nullptr) == 1.0 / 3.0);
}

}  // TEST_SUITE
