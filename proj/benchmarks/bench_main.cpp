#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bspace/bspace.hpp"

using namespace bspace;

namespace {

std::vector<Point> disk_points(std::size_t n, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double rho = radius * std::sqrt(u(rng));
    pts.push_back(complex_point(std::polar(rho, 2.0 * kPi * u(rng))));
  }
  return pts;
}

void BM_SzegoBoundaryGram(benchmark::State& state) {
  const Kernel k = Kernel::szego();
  const Section s = build_section(k, disk_points(static_cast<std::size_t>(state.range(0)), 0.9, 1));
  const BoundaryExtension ext = BoundaryExtension::canonical(k);
  const QuadMeasure mu = QuadMeasure::periodic_uniform(2048);
  for (auto _ : state) benchmark::DoNotOptimize(boundary_gram(ext, mu, s));
}
BENCHMARK(BM_SzegoBoundaryGram)->Arg(10)->Arg(40);

void BM_CantorFourier(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cantor4_fourier(t));
    t += 0.37;
  }
}
BENCHMARK(BM_CantorFourier);

void BM_CantorBoundaryGram(benchmark::State& state) {
  const Kernel k = Kernel::cantor4(static_cast<int>(state.range(0)));
  const Section s = build_section(k, disk_points(6, 0.9, 2));
  const BoundaryExtension ext = BoundaryExtension::canonical(k);
  const QuadMeasure mu = QuadMeasure::cantor_exact();
  for (auto _ : state) benchmark::DoNotOptimize(boundary_gram(ext, mu, s));
}
BENCHMARK(BM_CantorBoundaryGram)->Arg(4)->Arg(6);

void BM_CarlesonPencil(benchmark::State& state) {
  const Kernel k = Kernel::szego();
  const Section s = build_section(k, disk_points(static_cast<std::size_t>(state.range(0)), 0.9, 1));
  const BoundaryMatrix n = boundary_gram(BoundaryExtension::canonical(k), QuadMeasure::periodic_uniform(2048), s);
  for (auto _ : state) benchmark::DoNotOptimize(carleson_constant(n));
}
BENCHMARK(BM_CarlesonPencil)->Arg(10)->Arg(40);

void BM_OntoResidual(benchmark::State& state) {
  const Kernel k = Kernel::szego();
  const Section s = build_section(k, disk_points(static_cast<std::size_t>(state.range(0)), 0.9, 1));
  const BoundaryExtension ext = BoundaryExtension::canonical(k);
  const QuadMeasure mu = QuadMeasure::periodic_uniform(2048);
  const BoundaryFunction target = BoundaryFunction::exponential(-1);
  for (auto _ : state) benchmark::DoNotOptimize(onto_residual(target, ext, mu, s));
}
BENCHMARK(BM_OntoResidual)->Arg(10)->Arg(20);

void BM_GaussianSample(benchmark::State& state) {
  const Kernel k = Kernel::szego();
  const GaussianEnsemble e = build_ensemble(build_section(k, disk_points(5, 0.9, 1)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(sample(e, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GaussianSample)->Arg(10000);

void BM_ShannonReconstruct(benchmark::State& state) {
  const BandlimitedSamples samples =
      BandlimitedSamples::from_function(state.range(0), [](double t) { return Complex(sinc(t - 0.3)); });
  double t = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shannon_reconstruct(samples, t));
    t = t > 2.0 ? -2.0 : t + 0.01;
  }
}
BENCHMARK(BM_ShannonReconstruct)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
