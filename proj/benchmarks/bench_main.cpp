// Microbenchmarks for the kernels that dominate a simulation: the angular
// transforms, the dealiased cubic, one radial transmission solve, spectrum
// assembly, and a full integrator step.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bidomain/dtn.hpp"
#include "bidomain/evolution.hpp"
#include "bidomain/radial_grid.hpp"
#include "bidomain/transmission.hpp"

namespace {

using namespace bidomain;

const Geometry kGeom(1.0, 2.0);
const KineticsParams kStd(0.1, 1.0, 0.01);

std::vector<double> closed_mu(int k_max) {
  std::vector<double> mu(static_cast<std::size_t>(k_max) + 1);
  for (int n = 0; n <= k_max; ++n) {
    mu[static_cast<std::size_t>(n)] = dtn_mu_closed_form(n, kGeom, 1.0, 1.0);
  }
  return mu;
}

SpectralField band_field(int k_max) {
  SpectralField f(k_max);
  f.at(0) = {0.1, 0.0};
  for (int n = 1; n <= k_max; ++n) {
    const double amp = 0.05 / n;
    f.at(n) = {amp, 0.0};
    f.at(-n) = {amp, 0.0};
  }
  return f;
}

void BM_analyze(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const FourierGrid grid(k);
  std::vector<double> samples(static_cast<std::size_t>(grid.m_phys()));
  for (int j = 0; j < grid.m_phys(); ++j) {
    samples[static_cast<std::size_t>(j)] = 0.3 + std::cos(grid.theta(j));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(samples, grid));
  }
}
BENCHMARK(BM_analyze)->Arg(8)->Arg(32)->Arg(128);

void BM_synthesize(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const FourierGrid grid(k);
  const SpectralField f = band_field(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize(f, grid));
  }
}
BENCHMARK(BM_synthesize)->Arg(8)->Arg(32)->Arg(128);

void BM_nonlinearity(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const FourierGrid grid(k);
  const SpectralField f = band_field(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(nonlinearity(f, kStd, grid));
  }
}
BENCHMARK(BM_nonlinearity)->Arg(8)->Arg(32)->Arg(128);

void BM_solve_mode(benchmark::State& state) {
  const int nodes = static_cast<int>(state.range(0));
  const ConductivityProfile cond = ConductivityProfile::constants(1.0, 1.0);
  const RadialGrid grid = RadialGrid::uniform(kGeom, nodes, nodes);
  const SourceData none(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_mode(3, kGeom, cond, 1.0, none, grid));
  }
}
BENCHMARK(BM_solve_mode)->Arg(200)->Arg(800)->Arg(3200);

void BM_assemble_dtn(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const ConductivityProfile cond = ConductivityProfile::constants(1.0, 1.0);
  const RadialGrid grid = RadialGrid::uniform(kGeom, 400, 400);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_dtn(kGeom, cond, k, grid));
  }
}
BENCHMARK(BM_assemble_dtn)->Arg(8)->Arg(32);

void BM_integrator_step(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  IntegratorOptions opt;
  opt.scheme = Scheme::sbdf2;
  opt.dt = 1e-3;
  Integrator integ(closed_mu(k), kStd, Forcing(), FourierGrid(k), opt);
  SpectralField w(k);
  integ.set_state(band_field(k), w);
  for (auto _ : state) {
    integ.step();
    benchmark::DoNotOptimize(integ.state());
  }
}
BENCHMARK(BM_integrator_step)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
