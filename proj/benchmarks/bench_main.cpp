#include <random>

#include <benchmark/benchmark.h>

#include "polyinv/catalog.hpp"
#include "polyinv/contraction.hpp"
#include "polyinv/fitting.hpp"
#include "polyinv/orthogonal.hpp"
#include "polyinv/polynomial.hpp"

namespace {

polyinv::Polynomial random_polynomial(int n, int max_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  polyinv::Polynomial p(n, max_degree);
  for (int d = 0; d <= max_degree; ++d)
    for (const auto& e : polyinv::enumerate_exponents(n, d)) p.set_coefficient(e, g(rng));
  return p;
}

void BM_ApplyRotation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int d = static_cast<int>(state.range(1));
  const auto p = random_polynomial(n, d, 1);
  const auto o = polyinv::random_orthogonal(n, std::uint64_t{2});
  for (auto _ : state) benchmark::DoNotOptimize(polyinv::apply_rotation(p, o));
}
BENCHMARK(BM_ApplyRotation)->Args({3, 2})->Args({3, 4})->Args({4, 4})->Args({6, 6});

void BM_EvaluateGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = random_polynomial(n, 4, 3);
  const auto g = polyinv::inserted_graph(4, 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(polyinv::evaluate_graph(g, p));
}
BENCHMARK(BM_EvaluateGraph)->Arg(3)->Arg(4)->Arg(6);

void BM_EnumerateGraphs(benchmark::State& state) {
  std::vector<polyinv::VertexLabel> v(static_cast<std::size_t>(state.range(0)), polyinv::VertexLabel{3, "p"});
  for (auto _ : state) benchmark::DoNotOptimize(polyinv::enumerate_graphs(v));
}
BENCHMARK(BM_EnumerateGraphs)->Arg(2)->Arg(4)->Arg(6);

void BM_FeatureVector(benchmark::State& state) {
  const auto p = random_polynomial(3, static_cast<int>(state.range(0)), 4);
  const polyinv::CatalogConfig cfg{.include_mixed = true, .max_insertions = 2};
  for (auto _ : state) benchmark::DoNotOptimize(polyinv::feature_vector(p, cfg));
}
BENCHMARK(BM_FeatureVector)->Arg(2)->Arg(4);

void BM_Fit(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd x(500, 3);
  Eigen::VectorXd y(500);
  for (int i = 0; i < 500; ++i) {
    for (int j = 0; j < 3; ++j) x(i, j) = u(rng);
    y(i) = std::exp(-x.row(i).squaredNorm());
  }
  const polyinv::PointCloud cloud(x, y);
  for (auto _ : state) benchmark::DoNotOptimize(polyinv::fit(cloud, polyinv::FitConfig{.max_degree = d}));
}
BENCHMARK(BM_Fit)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
