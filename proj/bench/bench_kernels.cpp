#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "radgas/elliptic.hpp"
#include "radgas/kernels.hpp"

using namespace radgas;

namespace {

std::vector<double> ramp(const HalfLineGrid& g) {
  std::vector<double> u(g.n);
  for (std::size_t i = 0; i < g.n; ++i) u[i] = 0.1 + 0.2 * std::tanh(g.x(i) / 5.0);
  return u;
}

void flux_divergence_bench(benchmark::State& state, Exec exec) {
  const auto g = HalfLineGrid::make(static_cast<std::size_t>(state.range(0)), 2000.0);
  const auto u = ramp(g);
  const auto flux = FluxPair::burgers();
  std::vector<double> out(g.n);
  for (auto _ : state) {
    kernels::flux_divergence(u, g.h, flux.f, exec, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void kernel_direct_bench(benchmark::State& state, Exec exec) {
  const auto g = HalfLineGrid::make(static_cast<std::size_t>(state.range(0)), 200.0);
  const auto f = ramp(g);
  for (auto _ : state) benchmark::DoNotOptimize(k_dirichlet(f, g, exec));
}

void kernel_recursive_bench(benchmark::State& state) {
  const auto g = HalfLineGrid::make(static_cast<std::size_t>(state.range(0)), 200.0);
  const auto f = ramp(g);
  for (auto _ : state) benchmark::DoNotOptimize(k_dirichlet_recursive(f, g));
}

void divp_bench(benchmark::State& state, Exec exec) {
  const auto g = HalfPlaneGrid::make(static_cast<std::size_t>(state.range(0)), 128, 400.0, 20.0);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.nx; ++i)
    for (std::size_t j = 0; j < g.ny; ++j)
      v[g.index(i, j)] = std::sin(2.0 * M_PI * g.y(j) / g.ly()) * g.x(i) * std::exp(-g.x(i));
  DivpSolver solver(g, exec);
  DivpFields out;
  for (auto _ : state) {
    solver.solve(v, out);
    benchmark::DoNotOptimize(out.s.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(flux_divergence_bench, serial, Exec::serial)->Arg(4096)->Arg(65536);
BENCHMARK_CAPTURE(flux_divergence_bench, parallel, Exec::parallel)->Arg(4096)->Arg(65536);
BENCHMARK_CAPTURE(kernel_direct_bench, serial, Exec::serial)->Arg(1024)->Arg(4096);
BENCHMARK_CAPTURE(kernel_direct_bench, parallel, Exec::parallel)->Arg(1024)->Arg(4096);
BENCHMARK(kernel_recursive_bench)->Arg(1024)->Arg(4096)->Arg(65536);
BENCHMARK_CAPTURE(divp_bench, serial, Exec::serial)->Arg(512);
BENCHMARK_CAPTURE(divp_bench, parallel, Exec::parallel)->Arg(512);

BENCHMARK_MAIN();
