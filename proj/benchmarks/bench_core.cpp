#include <benchmark/benchmark.h>

#include "logdamp/data.hpp"
#include "logdamp/experiments.hpp"
#include "logdamp/model.hpp"
#include "logdamp/quadrature.hpp"
#include "logdamp/spectral.hpp"

namespace {

using namespace logdamp;

void BM_PropagatorsOscillatory(benchmark::State& state) {
    double r = 0.0;
    for (auto _ : state) {
        r += 1e-3;
        benchmark::DoNotOptimize(propagators(1.0, r, 50.0));
    }
}
BENCHMARK(BM_PropagatorsOscillatory);

void BM_PropagatorsEffective(benchmark::State& state) {
    double r = 0.0;
    for (auto _ : state) {
        r += 1e-4;
        benchmark::DoNotOptimize(propagators(4.0, r, 50.0));
    }
}
BENCHMARK(BM_PropagatorsEffective);

void BM_SolutionHat(benchmark::State& state) {
    const DataPair pair = pair_from_key("gaussian:1,1", 2);
    double r = 0.0;
    for (auto _ : state) {
        r += 1e-3;
        benchmark::DoNotOptimize(solution_hat(pair, 2.0, r, 100.0));
    }
}
BENCHMARK(BM_SolutionHat);

void BM_ThresholdDelta(benchmark::State& state) {
    double mu = 2.0;
    for (auto _ : state) {
        mu += 1e-6;
        benchmark::DoNotOptimize(threshold_delta(mu));
    }
}
BENCHMARK(BM_ThresholdDelta);

void BM_SolutionNorm(benchmark::State& state) {
    const DataPair pair = pair_from_key("gaussian:1,1", static_cast<int>(state.range(0)));
    const double mu = state.range(1) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solution_norm(pair, mu, 1e3));
    }
}
BENCHMARK(BM_SolutionNorm)->Args({1, 10})->Args({2, 20})->Args({3, 40});

void BM_EnvelopeMomentLow(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(envelope_moment(2.0, 4.0, 1.0, 1e4, MomentRange::Low));
    }
}
BENCHMARK(BM_EnvelopeMomentLow);

void BM_Rk4Mode(benchmark::State& state) {
    const DataPair pair = pair_from_key("gaussian:1,1", 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rk4_mode(pair, 2.0, 1.0, 10.0, 1e-3));
    }
}
BENCHMARK(BM_Rk4Mode);

}  // namespace

BENCHMARK_MAIN();
