// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>

#include "sigtree/kernels.hpp"
#include "sigtree/paths.hpp"
#include "sigtree/signature.hpp"
#include "sigtree/tensor_algebra.hpp"

using namespace sigtree;

namespace {

PolyPath random_path(std::mt19937_64& rng, std::size_t dim, std::size_t segments) {
  std::normal_distribution<double> g;
  std::vector<double> coords((segments + 1) * dim);
  for (double& c : coords) c = g(rng);
  return PolyPath(dim, std::move(coords));
}

std::vector<PolyPath> batch(std::size_t count, std::size_t dim, std::size_t segments) {
  std::mt19937_64 rng(7);
  std::vector<PolyPath> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_path(rng, dim, segments));
  return out;
}

template <bool Parallel>
void BM_TensorMul(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const int depth = static_cast<int>(state.range(1));
  std::mt19937_64 rng(1);
  const TensorSeries a = sig(random_path(rng, static_cast<std::size_t>(dim), 4), depth).series();
  const TensorSeries b = sig(random_path(rng, static_cast<std::size_t>(dim), 4), depth).series();
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::tensor_mul(a, b));
    else
      benchmark::DoNotOptimize(kernels::serial::tensor_mul(a, b));
  }
}

template <bool Parallel>
void BM_Signatures(benchmark::State& state) {
  const auto paths = batch(static_cast<std::size_t>(state.range(0)), 3, 32);
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::signatures(paths, 5));
    else
      benchmark::DoNotOptimize(kernels::serial::signatures(paths, 5));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_PairwiseDistances(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const GroupPath g = sig_prefix_path(batch(1, 2, n - 1).front(), 3);
  auto dist = [&](std::size_t i, std::size_t j) { return group_distance(g[i].series(), g[j].series()); };
  for (auto _ : state) {
    if constexpr (Parallel)
      benchmark::DoNotOptimize(kernels::parallel::pairwise_distances(n, dist));
    else
      benchmark::DoNotOptimize(kernels::serial::pairwise_distances(n, dist));
  }
}

}  // namespace

BENCHMARK(BM_TensorMul<false>)->Args({2, 10})->Args({4, 6})->Args({8, 4})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TensorMul<true>)->Args({2, 10})->Args({4, 6})->Args({8, 4})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Signatures<false>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Signatures<true>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseDistances<false>)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairwiseDistances<true>)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
