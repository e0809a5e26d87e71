#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "ybchain/edoracle.h"
#include "ybchain/phase_diagram.h"

namespace {

using namespace ybchain;

Eigen::VectorXcd random_vector(std::size_t dim) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(g(rng), g(rng));
  return v;
}

/// range(0) = unit cells N, chain of 2N sites.
void matvec_parallel(benchmark::State& state) {
  const SpinHamiltonian h(0.9, 1.7, 0.4, static_cast<int>(state.range(0)));
  const auto x = random_vector(h.dim());
  Eigen::VectorXcd y(x.size());
  for (auto _ : state) {
    h.apply({x.data(), h.dim()}, {y.data(), h.dim()});
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.dim()));
}

void matvec_serial(benchmark::State& state) {
  const SpinHamiltonian h(0.9, 1.7, 0.4, static_cast<int>(state.range(0)));
  const auto x = random_vector(h.dim());
  Eigen::VectorXcd y(x.size());
  for (auto _ : state) {
    h.apply_serial({x.data(), h.dim()}, {y.data(), h.dim()});
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.dim()));
}

BENCHMARK(matvec_parallel)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(matvec_serial)->Arg(6)->Arg(7)->Arg(8)->Unit(benchmark::kMicrosecond);

/// range(0) = grid points per axis.
GridSpec square(int n) { return {0.0, std::numbers::pi, 0.0, std::numbers::pi, n, n}; }

void scan_parallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(phase_diagram(Quantity::ce1, square(static_cast<int>(state.range(0)))));
}

void scan_serial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(phase_diagram_serial(Quantity::ce1, square(static_cast<int>(state.range(0)))));
}

BENCHMARK(scan_parallel)->Arg(41)->Arg(101)->Unit(benchmark::kMillisecond);
BENCHMARK(scan_serial)->Arg(41)->Arg(101)->Unit(benchmark::kMillisecond);

void ground_state_lanczos(benchmark::State& state) {
  const SpinHamiltonian h(0.9, 1.7, 0.4, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ground_state(h).energy);
}

BENCHMARK(ground_state_lanczos)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
