// Serial reference vs OpenMP kernels on the shapes the library actually uses:
// circle quadrature averages (float) and finite-group averages (rational).
#include "equitrans/group_reps.hpp"
#include "equitrans/kernels.hpp"
#include "equitrans/sampling.hpp"

#include <benchmark/benchmark.h>

using namespace equitrans;
using kernels::Backend;

namespace {

Backend backend_of(const benchmark::State& state) { return state.range(0) == 0 ? Backend::serial : Backend::parallel; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

std::vector<MatD> orthogonal_samples(int count, int dim, std::uint64_t seed) {
  sampling::Rng rng(seed);
  std::vector<MatD> out;
  for (int k = 0; k < count; ++k) out.push_back(sampling::random_orthogonal(dim, rng));
  return out;
}

void BM_product(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const auto m = orthogonal_samples(2, n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::product<double>(m[0], m[1], backend_of(state)));
  label(state);
}

void BM_weighted_sum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const auto mats = orthogonal_samples(256, n, 2);
  const std::vector<double> w(mats.size(), 1.0 / 256.0);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::weighted_sum<double>(mats, w, backend_of(state)));
  label(state);
}

void BM_twisted_average(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const auto left = orthogonal_samples(64, n, 3);
  const auto right = orthogonal_samples(64, n, 4);
  const MatD x = MatD::Random(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::twisted_average<double>(left, x, right, backend_of(state)));
  label(state);
}

void BM_averaging_operator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  const auto left = orthogonal_samples(64, n, 5);
  const auto right = orthogonal_samples(64, n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::averaging_operator<double>(left, right, backend_of(state)));
  label(state);
}

// Exact isotypic projector of a 12-dimensional S_4 representation.
void BM_rational_projector(benchmark::State& state) {
  const auto group = reps::preset_group("S_4");
  sampling::Rng rng(7);
  const auto rep = sampling::random_representation<Rational>(group, 12, rng);
  const auto irreps = reps::nontrivial_irreps<Rational>(group);
  for (auto _ : state)
    for (const auto& ir : irreps) benchmark::DoNotOptimize(reps::isotypic_projector(rep, ir, backend_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_product)->ArgsProduct({{0, 1}, {32, 128, 256}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_weighted_sum)->ArgsProduct({{0, 1}, {8, 32, 64}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_twisted_average)->ArgsProduct({{0, 1}, {8, 24, 48}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_averaging_operator)->ArgsProduct({{0, 1}, {4, 8, 12}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_rational_projector)->ArgsProduct({{0, 1}, {12}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
