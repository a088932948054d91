#include <benchmark/benchmark.h>

#include <kummergap/first_passage.hpp>
#include <kummergap/integrals.hpp>
#include <kummergap/special_functions.hpp>
#include <kummergap/zero_finder.hpp>

namespace {

// extended-precision series deep in the cancellation zone
void BM_kummer_m_deep(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(kummergap::kummer_m(-21.629, 1.5, 14.0873).value);
}
BENCHMARK(BM_kummer_m_deep);

void BM_weighted_integral(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            kummergap::weighted_phi_sq_integral(-1.0033657, 1.5, 14.0872, 1e-10).value);
}
BENCHMARK(BM_weighted_integral);

void BM_find_zeros(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(kummergap::find_zeros(1.5, 14.087432, 11).zeros.back());
}
BENCHMARK(BM_find_zeros);

void BM_pfa_interval(benchmark::State& state) {
    const kummergap::FirstPassageProblem pr = kummergap::make_problem(3, 10.0, 1e-4, 3);
    for (auto _ : state) benchmark::DoNotOptimize(kummergap::pfa_interval(pr).upper);
}
BENCHMARK(BM_pfa_interval);

} // namespace

BENCHMARK_MAIN();
