#include <benchmark/benchmark.h>

#include <random>

#include "mwkr/compactness.hpp"
#include "mwkr/cubes.hpp"
#include "mwkr/muckenhoupt.hpp"
#include "mwkr/operators.hpp"

using namespace mwkr;

namespace {

Backend backend_of(const benchmark::State& state) { return state.range(1) == 0 ? Backend::serial : Backend::openmp; }

MatrixWeightField sample_weight(const Grid& g) {
  const double alpha[] = {0.5, 1.0 / 3.0};
  return make_power_weight(g, alpha, planar_rotation([](const Grid::Point& x) { return x[0]; }, 2));
}

SampledVectorField noise(const Grid& g, int d) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<cplx> data(g.size() * static_cast<std::size_t>(d));
  for (auto& z : data) z = cplx(normal(rng), normal(rng));
  return SampledVectorField(g, d, std::move(data));
}

void ApConstant(benchmark::State& state) {
  const Grid g(1, 16.0, static_cast<int>(state.range(0)));
  const MatrixWeightField w = sample_weight(g);
  const CubeFamily cubes = dyadic_cubes(g, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ap_constant(w, 2.0, cubes, backend_of(state)).value);
}

void BallAverage(benchmark::State& state) {
  const Grid g(2, 1.0, static_cast<int>(state.range(0)));
  const SampledVectorField f = noise(g, 2);
  const MeasureDensity mu = MeasureDensity::lebesgue(g);
  const BallScheme scheme(g, 8 * g.spacing());
  for (auto _ : state) benchmark::DoNotOptimize(ball_average(f, mu, scheme, {}, backend_of(state)).data().data());
}

void TranslationCurve(benchmark::State& state) {
  const Grid g(1, 16.0, static_cast<int>(state.range(0)));
  const FunctionSpace space = FunctionSpace::weighted(sample_weight(g), 2.0).with_backend(backend_of(state));
  BumpOptions opts;
  opts.count = 8;
  const FunctionFamily family = gaussian_bumps(g, 2, 7, opts);
  const Ladders ladders = default_ladders(g);
  for (auto _ : state) benchmark::DoNotOptimize(translation_curve(family, ladders.scales, space).size());
}

void Maximal(benchmark::State& state) {
  const Grid g(1, 4.0, static_cast<int>(state.range(0)));
  const MatrixWeightField w = sample_weight(g);
  const SampledVectorField f = noise(g, 2);
  const std::vector<double> radii = dyadic_radii(g);
  for (auto _ : state)
    benchmark::DoNotOptimize(christ_goldberg_maximal(f, w, 2.0, radii, backend_of(state)).values().data());
}

}  // namespace

BENCHMARK(ApConstant)->ArgsProduct({{1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BallAverage)->ArgsProduct({{128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(TranslationCurve)->ArgsProduct({{1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(Maximal)->ArgsProduct({{256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
