// Fast kernels against the nested-loop reference, and the OpenMP kernels at
// one thread against all available threads.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "pbo/fourier.hpp"
#include "pbo/nfr.hpp"
#include "pbo/reference.hpp"
#include "pbo/solver.hpp"

namespace {

using namespace pbo;

OmegaState omega(int n_max) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  OmegaState w = OmegaState::zeros(n_max, 0.3);
  for (int n = -n_max; n <= n_max; ++n) w(n) = cplx(g(rng), g(rng)) * sobolev_weight(n, -0.5);
  return w;
}

nfr::NFRConfig config(double K) {
  nfr::NFRConfig c;
  c.M = 4.0;
  c.K = mult::ComparabilityConstant(K);
  return c;
}

void BM_N_fast(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(nfr::trilinear_N(w));
}
void BM_N_reference(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::N(w));
}
void BM_N0_fast(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  const auto cfg = config(8.0);
  for (auto _ : st) benchmark::DoNotOptimize(nfr::term_N0(w, cfg));
}
void BM_N0_reference(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::N0(w, 4.0));
}
void BM_N10_fast(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  const auto cfg = config(2.0);
  for (auto _ : st) benchmark::DoNotOptimize(nfr::term_N10(w, cfg));
}
void BM_N10_reference(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  const mult::ComparabilityConstant K(2.0);
  for (auto _ : st) benchmark::DoNotOptimize(reference::N10(w, 4.0, K));
}
void BM_N30_fast(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  const auto cfg = config(2.0);
  for (auto _ : st) benchmark::DoNotOptimize(nfr::term_N30(w, cfg));
}
void BM_N30_reference(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  const mult::ComparabilityConstant K(2.0);
  for (auto _ : st) benchmark::DoNotOptimize(reference::N30(w, 4.0, K));
}

// range(0): band, range(1): threads (0 for the runtime maximum).
void BM_N_threads(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  const int saved = omp_get_max_threads();
  omp_set_num_threads(st.range(1) > 0 ? static_cast<int>(st.range(1)) : omp_get_num_procs());
  for (auto _ : st) benchmark::DoNotOptimize(nfr::trilinear_N(w));
  st.counters["threads"] = omp_get_max_threads();
  omp_set_num_threads(saved);
}
void BM_sextic_threads(benchmark::State& st) {
  const OmegaState w = omega(static_cast<int>(st.range(0)));
  const auto cfg = config(8.0);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(st.range(1) > 0 ? static_cast<int>(st.range(1)) : omp_get_num_procs());
  for (auto _ : st) benchmark::DoNotOptimize(nfr::term_N30(w, cfg));
  st.counters["threads"] = omp_get_max_threads();
  omp_set_num_threads(saved);
}

void BM_bo_step(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  std::vector<cplx> pos(static_cast<std::size_t>(n));
  pos[0] = 0.3;
  const SpectralField u0 = real_field_from_positive(GridSpec::oversampled(n), pos);
  solver::SolverConfig c;
  c.grid = GridSpec::oversampled(n);
  c.dt = 0.5 / (static_cast<double>(n) * n);
  c.T = 10 * c.dt;
  c.save_every = 1 << 30;
  for (auto _ : st) benchmark::DoNotOptimize(solver::integrate_bo(u0, c));
  st.SetItemsProcessed(st.iterations() * 10);
}

}  // namespace

BENCHMARK(BM_N_fast)->Arg(8)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(BM_N_reference)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_N0_fast)->Arg(8)->Arg(16)->Arg(32);
BENCHMARK(BM_N0_reference)->Arg(8)->Arg(16);
BENCHMARK(BM_N10_fast)->Arg(8)->Arg(12);
BENCHMARK(BM_N10_reference)->Arg(8)->Arg(12);
BENCHMARK(BM_N30_fast)->Arg(8)->Arg(12);
BENCHMARK(BM_N30_reference)->Arg(8)->Arg(12);
BENCHMARK(BM_N_threads)->Args({64, 1})->Args({64, 0})->Args({128, 1})->Args({128, 0});
BENCHMARK(BM_sextic_threads)->Args({32, 1})->Args({32, 0})->Args({64, 1})->Args({64, 0});
BENCHMARK(BM_bo_step)->Arg(32)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
