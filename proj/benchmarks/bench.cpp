#include <benchmark/benchmark.h>

#include <random>

#include "nodal_morse/campaign.hpp"
#include "nodal_morse/hill.hpp"
#include "nodal_morse/hodge.hpp"
#include "nodal_morse/magnetic.hpp"
#include "nodal_morse/spectral.hpp"

using namespace nodal_morse;

namespace {

Eigen::MatrixXd random_symmetric(int n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = g(rng);
  }
  return m;
}

SchrodingerOperator dense_instance(int vertices, int cycles) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(vertices) * 131 + cycles);
  return random_operator(random_connected_graph(rng, vertices, cycles), rng());
}

void BM_Jacobi(benchmark::State& state) {
  const Eigen::MatrixXd m = random_symmetric(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigensolver(m).values);
}
BENCHMARK(BM_Jacobi)->RangeMultiplier(2)->Range(4, 32);

void BM_HermitianSpectrum(benchmark::State& state) {
  const SchrodingerOperator op = dense_instance(static_cast<int>(state.range(0)), 6);
  FluxCoordinates theta{Eigen::VectorXd::Constant(op.graph().beta(), 0.3)};
  for (auto _ : state) benchmark::DoNotOptimize(magnetic_spectrum(op, theta));
}
BENCHMARK(BM_HermitianSpectrum)->Arg(6)->Arg(12)->Arg(24);

void BM_FluxStencil(benchmark::State& state) {
  const SchrodingerOperator op = dense_instance(12, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(FluxStencil(op).center());
}
BENCHMARK(BM_FluxStencil)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_PairCheck(benchmark::State& state) {
  const SchrodingerOperator op = dense_instance(12, 6);
  for (auto _ : state) benchmark::DoNotOptimize(check_operator(op));
}
BENCHMARK(BM_PairCheck)->Unit(benchmark::kMillisecond);

void BM_Discriminant(benchmark::State& state) {
  const HillOperator h = parse_potential("cos:1", static_cast<int>(state.range(0)));
  double lambda = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(discriminant(h, lambda));
    lambda += 1e-6;
  }
}
BENCHMARK(BM_Discriminant)->Arg(1024)->Arg(4096);

void BM_BandScan(benchmark::State& state) {
  const HillOperator h = parse_potential("cos:1");
  for (auto _ : state) benchmark::DoNotOptimize(band_edges_through(h, static_cast<int>(state.range(0))).edges);
}
BENCHMARK(BM_BandScan)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
