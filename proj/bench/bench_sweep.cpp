// Serial reference vs OpenMP kernels: the load sweep and the numeric min-plus oracles.
// Arg(0) on the parallel variants means the OpenMP default thread count.

#include <benchmark/benchmark.h>

#include "dncstream/sweep.hpp"
#include "oracles.hpp"

using namespace dncstream;

namespace {

sweep::SweepSpec small_spec() {
  sweep::SweepSpec spec;
  spec.loads = {80, 160};
  spec.seeds = {1, 2};
  spec.base.total_clients = 300;
  return spec;
}

const net::Topology& topology() {
  static const auto topo = net::load_topology_file(DNCSTREAM_DATA_DIR "/default_topology.txt");
  return topo;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = small_spec();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep::run_sweep_serial(spec, topology()));
  }
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = small_spec();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep::run_sweep(spec, topology(), static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SweepParallel)->Arg(0)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

const minplus::RateLatencyCurve kA{1e7, 0.002}, kB{4e6, 0.005};
const minplus::AffineArrivalCurve kArrival{3e6, 5e5};
constexpr std::size_t kPoints = 10'000;

void BM_ConvolutionGridSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::convolution_grid_serial(kA, kB, 0.03, kPoints));
  }
}
BENCHMARK(BM_ConvolutionGridSerial)->Unit(benchmark::kMillisecond);

void BM_ConvolutionGridParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::convolution_grid_parallel(kA, kB, 0.03, kPoints));
  }
}
BENCHMARK(BM_ConvolutionGridParallel)->Unit(benchmark::kMillisecond);

void BM_DeviationSerial(benchmark::State& state) {
  const auto service = minplus::convolve(kA, kB);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::horizontal_deviation_serial(kArrival, service, 0.5, kPoints));
  }
}
BENCHMARK(BM_DeviationSerial)->Unit(benchmark::kMillisecond);

void BM_DeviationParallel(benchmark::State& state) {
  const auto service = minplus::convolve(kA, kB);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::horizontal_deviation_parallel(kArrival, service, 0.5, kPoints));
  }
}
BENCHMARK(BM_DeviationParallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
