#include <benchmark/benchmark.h>

#include <map>
#include <vector>

#include "raman/kernels.hpp"
#include "raman/oracle.hpp"
#include "raman/sweeps.hpp"

using namespace raman;

namespace {

const Hamiltonian& desk_hamiltonian(int cut) {
  static std::map<int, Hamiltonian> cache;
  auto it = cache.find(cut);
  if (it == cache.end()) {
    FockConfig cfg;
    cfg.cutoffs = {cut + 2, cut, cut, cut};
    const auto sc = make_scenario(Preset::desk);
    it = cache.emplace(cut, build_hamiltonian(sc.params, cfg)).first;
  }
  return it->second;
}

void matvec(benchmark::State& state, Backend b) {
  const auto& H = desk_hamiltonian(static_cast<int>(state.range(0)));
  std::vector<cplx> x(H.matrix.rows, cplx(1.0, 0.5)), y(H.matrix.rows);
  for (auto _ : state) {
    csr_matvec(b, H.matrix, x.data(), y.data());
    benchmark::DoNotOptimize(y.data());
  }
  state.counters["dim"] = static_cast<double>(H.matrix.rows);
}

void dot_product(benchmark::State& state, Backend b) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::vector<cplx> x(n, cplx(0.3, -0.2)), y(n, cplx(0.1, 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(dot(b, x.data(), y.data(), n));
}

void sweep(benchmark::State& state, Backend b) {
  SweepPlan plan;
  plan.grid = {0.0, 1.0, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(plan, b));
}

void evolve_step(benchmark::State& state, Backend b) {
  const auto& H = desk_hamiltonian(static_cast<int>(state.range(0)));
  FockConfig cfg;
  const int cut = static_cast<int>(state.range(0));
  cfg.cutoffs = {cut + 2, cut, cut, cut};
  const auto sc = make_scenario(Preset::desk);
  const OracleState psi = coherent_product_state(sc.amps, cfg);
  EvolveOptions opt;
  opt.backend = b;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(psi, H, 0.05, opt));
}

}  // namespace

BENCHMARK_CAPTURE(matvec, serial, Backend::serial)->Arg(5)->Arg(9)->Arg(13);
BENCHMARK_CAPTURE(matvec, openmp, Backend::openmp)->Arg(5)->Arg(9)->Arg(13);
BENCHMARK_CAPTURE(dot_product, serial, Backend::serial)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK_CAPTURE(dot_product, openmp, Backend::openmp)->Arg(1 << 12)->Arg(1 << 18);
BENCHMARK_CAPTURE(sweep, serial, Backend::serial)->Arg(501)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(sweep, openmp, Backend::openmp)->Arg(501)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(evolve_step, serial, Backend::serial)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(evolve_step, openmp, Backend::openmp)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
