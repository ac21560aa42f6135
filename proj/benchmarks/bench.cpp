#include <benchmark/benchmark.h>

#include <limits>
#include <numbers>
#include <random>

#include "waveaction/basis.hpp"
#include "waveaction/long_horizon.hpp"
#include "waveaction/operators.hpp"
#include "waveaction/propagator.hpp"
#include "waveaction/riccati.hpp"
#include "waveaction/tpbvp.hpp"

using namespace waveaction;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SpectralVector decaying_vector(const BasisConfig& cfg, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralVector v(cfg);
  for (int n = 1; n <= cfg.truncation; ++n)
    v.coeffs[static_cast<size_t>(n - 1)] = gauss(rng) / (n * n);
  return v;
}

void BM_OperatorApply(benchmark::State& state) {
  const BasisConfig cfg(1.0, static_cast<int>(state.range(0)), 1.0, 1.0);
  const auto op = make_operator(OperatorKind::M_mu, 0.1, cfg);
  SpectralVector x = decaying_vector(cfg, 1);
  for (auto _ : state) {
    x = op_apply(op, x);
    benchmark::DoNotOptimize(x.coeffs.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OperatorApply)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_FundamentalSolution(benchmark::State& state) {
  const BasisConfig cfg(1.0, static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state) {
    const auto fs = make_fundamental_solution(0.0, kInf, 0.37, cfg);
    benchmark::DoNotOptimize(fs.modes.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FundamentalSolution)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_SolveDisplacement(benchmark::State& state) {
  const BasisConfig cfg(1.0, static_cast<int>(state.range(0)), 1.0, 1.0);
  TpbvpProblem prob;
  prob.cfg = cfg;
  prob.horizon = 0.37;
  prob.kind = TerminalData::Displacement;
  prob.initial_displacement = decaying_vector(cfg, 2);
  prob.terminal = decaying_vector(cfg, 3);
  for (auto _ : state) {
    const auto sol = solve_displacement(prob);
    benchmark::DoNotOptimize(sol.initial_velocity.coeffs.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveDisplacement)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_SemigroupStep(benchmark::State& state) {
  const BasisConfig cfg(1.0, static_cast<int>(state.range(0)), 1.0, 1.0);
  WaveState y = make_state(decaying_vector(cfg, 4), decaying_vector(cfg, 5), 0.1);
  for (auto _ : state) {
    y = semigroup_step(y, 0.01);
    benchmark::DoNotOptimize(y.xi.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SemigroupStep)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_LongHorizonStates(benchmark::State& state) {
  const BasisConfig cfg(1.0, 256, 1.0, 2.0);
  const auto plan = auto_plan(cfg, 0.0, 3.0, static_cast<int>(state.range(0)));
  const SpectralVector x = decaying_vector(cfg, 6);
  const SpectralVector z = decaying_vector(cfg, 7);
  for (auto _ : state) {
    const auto inter = solve_intermediate_states(plan, x, z);
    benchmark::DoNotOptimize(inter.states.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LongHorizonStates)->RangeMultiplier(2)->Range(6, 96)->Complexity();

void BM_ProjectNamedProfile(benchmark::State& state) {
  const BasisConfig cfg(1.0, static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state) {
    const auto v = project_named_profile("raised-cosine", cfg);
    benchmark::DoNotOptimize(v.coeffs.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ProjectNamedProfile)->RangeMultiplier(4)->Range(16, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
