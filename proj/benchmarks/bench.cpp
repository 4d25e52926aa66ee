#include <benchmark/benchmark.h>

#include "pdolab/experiments.hpp"
#include "pdolab/maximal.hpp"
#include "pdolab/quantize.hpp"

using namespace pdolab;

namespace {

GridFunction member(const Grid& g) { return band_limited_random(g, 7); }

void bm_forward_transform(benchmark::State& state) {
    const Grid g(1, static_cast<int>(state.range(0)), two_pi);
    const GridFunction u = member(g);
    for (auto _ : state) benchmark::DoNotOptimize(forward_transform(u));
}
BENCHMARK(bm_forward_transform)->Arg(256)->Arg(1024)->Arg(4096);

void bm_apply_kn(benchmark::State& state) {
    const Grid g(1, static_cast<int>(state.range(0)), two_pi);
    const Symbol a =
        make_family("exotic", {1.0, 1.0}, SymbolClassParams{-0.25, 0.5, 0.5, false}, g);
    const GridFunction u = member(g);
    for (auto _ : state) benchmark::DoNotOptimize(apply_kn(a, u));
}
BENCHMARK(bm_apply_kn)->Arg(128)->Arg(512)->Arg(1024);

void bm_hl_maximal(benchmark::State& state) {
    const Grid g(1, static_cast<int>(state.range(0)), two_pi);
    const CubeFamily fam(g);
    const GridFunction u = member(g);
    for (auto _ : state) benchmark::DoNotOptimize(hl_maximal(u, fam));
}
BENCHMARK(bm_hl_maximal)->Arg(1024)->Arg(8192);

void bm_sharp_median(benchmark::State& state) {
    const Grid g(1, static_cast<int>(state.range(0)), two_pi);
    const CubeFamily fam(g);
    GridFunction u = member(g);
    for (auto& v : u.values) v = cplx(std::abs(v), 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(sharp_maximal(u, fam, SharpMode::median));
}
BENCHMARK(bm_sharp_median)->Arg(512)->Arg(2048);

void bm_sharp_mean(benchmark::State& state) {
    const Grid g(1, static_cast<int>(state.range(0)), two_pi);
    const CubeFamily fam(g);
    const GridFunction u = member(g);
    for (auto _ : state) benchmark::DoNotOptimize(sharp_maximal(u, fam, SharpMode::mean));
}
BENCHMARK(bm_sharp_mean)->Arg(512)->Arg(2048);

}  // namespace

BENCHMARK_MAIN();
