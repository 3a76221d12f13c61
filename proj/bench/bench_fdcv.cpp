// Serial reference paths against their OpenMP counterparts, plus the two
// quadratic-form backends of the restricted likelihood.

#include "fdcv/reml.hpp"
#include "fdcv/selector.hpp"
#include "fdcv/simulation.hpp"

#include <benchmark/benchmark.h>

using namespace fdcv;

namespace {

TimeSeries ar_series(std::size_t n) { return TimeSeries(simulate(DgpSpec::ar1(0.9, n), 1, 0)); }

void BM_CvScoresSerial(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto s = ar_series(n);
    const auto cls = CandidateClass::for_length(n);
    for (auto _ : state) benchmark::DoNotOptimize(cv_scores_serial(s, cls.candidates));
}

void BM_CvScoresParallel(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto s = ar_series(n);
    const auto cls = CandidateClass::for_length(n);
    for (auto _ : state) benchmark::DoNotOptimize(cv_scores(s, cls.candidates));
}

ExperimentConfig bench_config()
{
    ExperimentConfig cfg;
    cfg.dgp = DgpSpec::ar1(0.9, 50);
    cfg.replications = 64;
    return cfg;
}

void BM_ExperimentSerial(benchmark::State& state)
{
    const auto cfg = bench_config();
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(cfg));
}

void BM_ExperimentParallel(benchmark::State& state)
{
    const auto cfg = bench_config();
    for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
}

void BM_RemlLoglik(benchmark::State& state, QuadFormBackend backend)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = simulate(DgpSpec::ar1(0.5, n), 2, 0);
    RemlOptions o;
    o.backend = backend;
    const std::vector<double> pacf{0.5, -0.3, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(restricted_loglik(x, pacf, 1.0, o));
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_CvScoresSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CvScoresParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExperimentSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExperimentParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_RemlLoglik, pcg, QuadFormBackend::ToeplitzSolver)
    ->RangeMultiplier(2)->Range(1024, 16384)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK_CAPTURE(BM_RemlLoglik, innovations, QuadFormBackend::Innovations)
    ->RangeMultiplier(2)->Range(1024, 16384)->Unit(benchmark::kMillisecond)->Complexity();

BENCHMARK_MAIN();
