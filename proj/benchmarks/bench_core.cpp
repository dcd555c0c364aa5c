#include <benchmark/benchmark.h>

#include <random>

#include "coherence/clock.hpp"
#include "coherence/divergence.hpp"
#include "coherence/ising.hpp"
#include "coherence/states.hpp"

using namespace coherence;

namespace {

void BM_WCohPure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sys = make_qubits(n, 1.0);
  const auto g = gibbs(*sys, 1.0);
  std::mt19937_64 rng(1);
  const auto psi = states::random_pure(sys, rng);
  for (auto _ : state) benchmark::DoNotOptimize(w_coh(psi, g).value);
}
BENCHMARK(BM_WCohPure)->DenseRange(2, 8, 2);

void BM_Qfi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto sys = make_qubits(n, 1.0);
  std::mt19937_64 rng(2);
  const auto rho = states::random_mixed(sys, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qfi(rho));
}
BENCHMARK(BM_Qfi)->DenseRange(2, 8, 2);

void BM_SectorSpectrum(benchmark::State& state) {
  const ising::IsingChain chain{static_cast<std::size_t>(state.range(0)), 0.8, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(ising::sector_spectrum(chain, ising::Sector::NS).levels.size());
}
BENCHMARK(BM_SectorSpectrum)->Arg(8)->Arg(12)->Arg(16);

void BM_ExactDiagonalization(benchmark::State& state) {
  const ising::IsingChain chain{static_cast<std::size_t>(state.range(0)), 0.8, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(ising::ed_oracle(chain).size());
}
BENCHMARK(BM_ExactDiagonalization)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
