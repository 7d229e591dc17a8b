// Serial reference against OpenMP kernels. Arg 0 selects serial (0) or parallel (1),
// arg 1 is the number of cells.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rdsim/kernels.hpp"
#include "rdsim/models.hpp"

using namespace rdsim;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

std::vector<double> wave(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = 1.0 + 0.5 * std::sin(0.01 * static_cast<double>(j));
  return v;
}

void BM_Laplacian(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto f = wave(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::laplacian(mode(state), f, 1.0 / static_cast<double>(n), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_Reaction(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const Grid1D g(n, 1.0);
  const ReactionSystem sys = instantiate_model(QuadraticReversibleParams{}, {1.0, 1.0, 1.0, 1.0});
  std::vector<Field> u(4, Field(g, wave(n))), out(4, Field(g));
  for (auto _ : state) {
    kernels::reaction(mode(state), sys.reaction(), 0.0, u, out);
    benchmark::DoNotOptimize(out[0].values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_ImplicitDiffusion(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const Grid1D g(n, 1.0);
  const std::vector<double> r{0.5, 1.0, 2.0, 4.0};
  std::vector<Field> fields(4, Field(g, wave(n)));
  for (auto _ : state) {
    kernels::implicit_diffusion(mode(state), r, fields);
    benchmark::DoNotOptimize(fields[0].values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}

void BM_Holder(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  const auto v = wave(n);
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::holder_pairs(mode(state), v, x, 0.5));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * (n - 1) / 2));
}

}  // namespace

BENCHMARK(BM_Laplacian)->ArgsProduct({{0, 1}, {1 << 12, 1 << 18}})->UseRealTime();
BENCHMARK(BM_Reaction)->ArgsProduct({{0, 1}, {1 << 12, 1 << 16}})->UseRealTime();
BENCHMARK(BM_ImplicitDiffusion)->ArgsProduct({{0, 1}, {1 << 12, 1 << 16}})->UseRealTime();
BENCHMARK(BM_Holder)->ArgsProduct({{0, 1}, {1 << 10, 1 << 12}})->UseRealTime();

BENCHMARK_MAIN();
