#include <benchmark/benchmark.h>
#include <omp.h>

#include <filesystem>
#include <random>
#include <vector>

#include "springsim/experiment.hpp"
#include "springsim/kernels.hpp"

namespace {

using namespace springsim;

const std::vector<Sample>& samples(std::size_t n) {
  static std::vector<Sample> s;
  if (s.size() != n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> a(0.5, 2.5), t(-30.0, 30.0);
    s.resize(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = {0.01 * static_cast<double>(i), a(rng), t(rng)};
  }
  return s;
}

void BM_MomentsSerial(benchmark::State& state) {
  const auto& s = samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::moments(s, 1.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MomentsParallel(benchmark::State& state) {
  const auto& s = samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::moments(s, 1.0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ResidualsSerial(benchmark::State& state) {
  const auto& s = samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::residuals(s, 5.0, 0.3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ResidualsParallel(benchmark::State& state) {
  const auto& s = samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::residuals(s, 5.0, 0.3));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TauSquaredSerial(benchmark::State& state) {
  const auto& s = samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::sum_tau_squared(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TauSquaredParallel(benchmark::State& state) {
  const auto& s = samples(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::sum_tau_squared(s));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// range(0) = OpenMP threads; 0 means the runtime default.
void BM_BuiltinGrid(benchmark::State& state) {
  const int previous = omp_get_max_threads();
  if (state.range(0) > 0) omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto dir = std::filesystem::temp_directory_path() / "springsim_bench_grid";
  const auto table = paper_table();
  for (auto _ : state) benchmark::DoNotOptimize(run_grid(table, dir));
  omp_set_num_threads(previous);
  std::filesystem::remove_all(dir);
}

constexpr std::int64_t kSmall = 1000, kLarge = 1 << 24;

BENCHMARK(BM_MomentsSerial)->RangeMultiplier(32)->Range(kSmall, kLarge);
BENCHMARK(BM_MomentsParallel)->RangeMultiplier(32)->Range(kSmall, kLarge);
BENCHMARK(BM_ResidualsSerial)->RangeMultiplier(32)->Range(kSmall, kLarge);
BENCHMARK(BM_ResidualsParallel)->RangeMultiplier(32)->Range(kSmall, kLarge);
BENCHMARK(BM_TauSquaredSerial)->RangeMultiplier(32)->Range(kSmall, kLarge);
BENCHMARK(BM_TauSquaredParallel)->RangeMultiplier(32)->Range(kSmall, kLarge);
BENCHMARK(BM_BuiltinGrid)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
