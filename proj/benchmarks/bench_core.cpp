#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "condlab/geometry.hpp"
#include "condlab/instances.hpp"
#include "condlab/montecarlo.hpp"
#include "condlab/radial.hpp"
#include "condlab/samplers.hpp"

using namespace condlab;

// Args: N, sigma exponent (sigma = 10^k).
static void BM_EvalG(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const double sigma = std::pow(10.0, static_cast<double>(state.range(1)));
  double alpha = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(radial::eval_G(alpha, N, sigma));
    alpha = alpha < 1.5 ? alpha + 0.01 : 0.1;
  }
}
BENCHMARK(BM_EvalG)->Args({6, -3})->Args({6, 0})->Args({50, -1})->Args({50, 1});

static void BM_BuildProfile(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const double sigma = std::pow(10.0, static_cast<double>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(radial::build_profile(N, sigma));
  state.SetLabel("257-point grid");
}
BENCHMARK(BM_BuildProfile)->Args({6, -3})->Args({6, 0})->Args({10, 1})->Unit(benchmark::kMillisecond);

// Args: N, theta in milliradians.
static void BM_CapSample(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const double theta = static_cast<double>(state.range(1)) * 1e-3;
  const CapAngleSampler sampler(N, theta);
  const UnitPoint center = UnitPoint::normalize(Point::basis(N + 1, 0));
  Engine rng = RngHandle{1, 0}.engine();
  for (auto _ : state) benchmark::DoNotOptimize(sampler.sample_point(center, rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CapSample)->Args({6, 50})->Args({6, 1570})->Args({100, 300})->Args({400, 1});

static void BM_CapSamplerSetup(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CapAngleSampler(N, 0.3));
}
BENCHMARK(BM_CapSamplerSetup)->Arg(6)->Arg(100);

// Args: N, number of normals. 10^4 draws from a cap of radius 0.3.
static void BM_Estimate(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  Engine eng = RngHandle{7, 0}.engine();
  std::vector<Eigen::VectorXd> normals;
  for (int i = 0; i < state.range(1); ++i) normals.push_back(sample_uniform_sphere(N, eng).coords());
  const HyperplaneArrangement h(normals);
  const UnitPoint center = sample_uniform_sphere(N, eng);
  const std::size_t n = 10000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc::estimate_ln_cond(h, center, mc::UniformCap{0.3}, n, RngHandle{7, 1}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Estimate)->Args({6, 2})->Args({10, 2})->Args({50, 8})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
