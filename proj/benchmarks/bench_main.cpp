#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "orthoexp/constructions.hpp"
#include "orthoexp/examples.hpp"
#include "orthoexp/fourier.hpp"
#include "orthoexp/verify.hpp"
#include "orthoexp/zonotope.hpp"

using namespace orthoexp;

namespace {

Polytope cube3() {
  std::vector<RatVector> pts;
  for (int mask = 0; mask < 8; ++mask) pts.push_back({mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1});
  return hull_from_vertices(pts);
}

std::vector<Vec> frequencies(std::size_t d, std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vec w(static_cast<Eigen::Index>(d));
    for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = u(rng);
    out.push_back(w);
  }
  return out;
}

void BM_Lawrence(benchmark::State& state, const Polytope& p) {
  const auto ws = frequencies(p.dim(), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fourier_lawrence(p, ws[i++ % ws.size()]));
}

void BM_Oracle(benchmark::State& state, const Polytope& p) {
  const auto ws = frequencies(p.dim(), 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(fourier_oracle(p, ws[i++ % ws.size()]));
}

void BM_Greedy(benchmark::State& state) {
  const Polytope p = examples::fig1_polygon();
  for (auto _ : state) benchmark::DoNotOptimize(construct_thm21(p, static_cast<std::size_t>(state.range(0))));
}

void BM_OrthogonalityReport(benchmark::State& state) {
  const Polytope p = examples::fig1_polygon();
  const OrthoSet s = construct_thm21(p, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(orthogonality_report(p, s));
}

void BM_ProjectedModel(benchmark::State& state) {
  const ZonotopeSpec spec = make_spec(examples::vandermonde5_matrix(), 3);
  for (auto _ : state) benchmark::DoNotOptimize(ProjectedWeightModel(spec).mass());
}

void BM_ProjectedIntegral(benchmark::State& state) {
  const ZonotopeSpec spec = make_spec(examples::hexagon_matrix(1, 2), 2);
  const ProjectedWeightModel model(spec);
  const auto ws = frequencies(2, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(model.integrate(ws[i++ % ws.size()]));
}

void BM_LatticeDensity(benchmark::State& state) {
  const Eigen::MatrixXd b{{2.0, 0.7}, {0.3, 1.9}};
  const double rho = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(density_estimate_lattice(b, {rho}));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Lawrence, fig1, examples::fig1_polygon());
BENCHMARK_CAPTURE(BM_Lawrence, cube3, cube3());
BENCHMARK_CAPTURE(BM_Oracle, fig1, examples::fig1_polygon());
BENCHMARK_CAPTURE(BM_Oracle, cube3, cube3());
BENCHMARK(BM_Greedy)->Arg(20)->Arg(50);
BENCHMARK(BM_OrthogonalityReport)->Arg(20)->Arg(50);
BENCHMARK(BM_ProjectedModel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ProjectedIntegral);
BENCHMARK(BM_LatticeDensity)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
