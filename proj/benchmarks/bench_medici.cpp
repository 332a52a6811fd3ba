#include <benchmark/benchmark.h>

#include "circuitforge/medici/calibration.hpp"
#include "circuitforge/medici/reconstruct.hpp"

using namespace circuitforge::medici;

static void BM_Reconstruct(benchmark::State& state) {
  const auto target = reference_summary();
  ReconstructOptions opt;
  opt.jobs = 1;
  for (auto _ : state) {
    opt.seed = static_cast<std::uint64_t>(state.iterations()) + 1;
    benchmark::DoNotOptimize(reconstruct_dataset(target, opt));
  }
}
BENCHMARK(BM_Reconstruct)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_CalibrateModel3(benchmark::State& state) {
  CalibrationOptions opt;
  opt.model = 3;
  opt.retentions = {0.025, 0.05, 0.10};
  opt.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(calibrate(opt));
}
BENCHMARK(BM_CalibrateModel3)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_SummarizeDataset(benchmark::State& state) {
  ReconstructOptions opt;
  opt.jobs = 1;
  const auto ds = reconstruct_dataset(reference_summary(), opt).dataset;
  for (auto _ : state) benchmark::DoNotOptimize(summarize(ds));
}
BENCHMARK(BM_SummarizeDataset);
