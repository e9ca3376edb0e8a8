#include <benchmark/benchmark.h>

#include "qwalk/noise.hpp"
#include "qwalk/optics.hpp"
#include "qwalk/povm.hpp"
#include "qwalk/protocols.hpp"
#include "qwalk/tomography.hpp"

namespace {

using namespace qwalk;

void BM_SicEvolve(benchmark::State& state) {
    const WalkSpec spec = sic_schedule(1);
    for (auto _ : state) benchmark::DoNotOptimize(evolve(spec));
}
BENCHMARK(BM_SicEvolve);

void BM_LongWalk(benchmark::State& state) {
    WalkSpec spec;
    spec.steps = static_cast<int>(state.range(0));
    spec.initial_coin = {1.0 / std::sqrt(2.0), cplx(0.0, 1.0 / std::sqrt(2.0))};
    spec.schedule.set(1, 0, Mat2::hadamard());
    for (auto _ : state) benchmark::DoNotOptimize(evolve(spec));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LongWalk)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_PovmExtraction(benchmark::State& state) {
    const CoinSchedule sched = sic_coin_schedule();
    for (auto _ : state) benchmark::DoNotOptimize(kraus_from_walk(sched, 6));
}
BENCHMARK(BM_PovmExtraction);

void BM_CompileCoin(benchmark::State& state) {
    const Mat2 target = sic_coin_schedule().coin(5, 0);
    for (auto _ : state) benchmark::DoNotOptimize(compile_coin(target));
}
BENCHMARK(BM_CompileCoin);

void BM_NoisyEvolve(benchmark::State& state) {
    const WalkSpec spec = sic_schedule(1);
    NoiseParams params;
    params.angle_jitter_deg = 0.3;
    params.seed = 7;
    for (auto _ : state) benchmark::DoNotOptimize(noisy_evolve(spec, params));
}
BENCHMARK(BM_NoisyEvolve);

void BM_Reconstruct(benchmark::State& state) {
    const SicOutcome row{{0.0149, 0.3327, 0.3246, 0.3277}};
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct(row));
}
BENCHMARK(BM_Reconstruct);

}  // namespace

BENCHMARK_MAIN();
