#include "monolab/calculus.hpp"
#include "monolab/distance.hpp"
#include "monolab/instances.hpp"
#include "monolab/rearrange.hpp"

#include <benchmark/benchmark.h>

using namespace monolab;

namespace {

GridFunction instance(const benchmark::State& state) {
    const auto m = static_cast<Index>(state.range(0));
    return gen_random_lipschitz({m, m, m}, 1.0, 1);
}

void BM_GradientMass_Parallel(benchmark::State& state) {
    const GridFunction f = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(gradient_mass(f, GradientNorm::l1));
}

void BM_GradientMass_Serial(benchmark::State& state) {
    const GridFunction f = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(reference::gradient_mass(f, GradientNorm::l1));
}

void BM_Lip1_Parallel(benchmark::State& state) {
    const GridFunction f = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(lip1(f));
}

void BM_Lip1_Serial(benchmark::State& state) {
    const GridFunction f = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(reference::lip1(f));
}

void BM_RearrangeAxis_Parallel(benchmark::State& state) {
    const GridFunction f = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(rearrange_axis(f, 2));
}

void BM_RearrangeAxis_Serial(benchmark::State& state) {
    const GridFunction f = instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(reference::rearrange_axis(f, 2));
}

GridFunction small_instance(const benchmark::State& state) {
    const auto m = static_cast<Index>(state.range(0));
    return gen_random_lipschitz({m, m}, 1.0, 2);
}

void BM_ExactDistance_Flow(benchmark::State& state) {
    const GridFunction f = small_instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(l1_distance_exact(f).exact_d1);
}

void BM_ExactDistance_Reference(benchmark::State& state) {
    const GridFunction f = small_instance(state);
    for (auto _ : state) benchmark::DoNotOptimize(reference::l1_distance_exact(f).exact_d1);
}

}  // namespace

BENCHMARK(BM_GradientMass_Parallel)->Arg(32)->Arg(64);
BENCHMARK(BM_GradientMass_Serial)->Arg(32)->Arg(64);
BENCHMARK(BM_Lip1_Parallel)->Arg(32)->Arg(64);
BENCHMARK(BM_Lip1_Serial)->Arg(32)->Arg(64);
BENCHMARK(BM_RearrangeAxis_Parallel)->Arg(32)->Arg(64);
BENCHMARK(BM_RearrangeAxis_Serial)->Arg(32)->Arg(64);
BENCHMARK(BM_ExactDistance_Flow)->Arg(8)->Arg(16);
BENCHMARK(BM_ExactDistance_Reference)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
