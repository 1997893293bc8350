#include <benchmark/benchmark.h>

#include "brw/engine.hpp"
#include "brw/oracle.hpp"
#include "brw/rng.hpp"
#include "brw/shapiro_wilk.hpp"

namespace {

using namespace brw;

MediumSpec homogeneous(double split, double death) {
  MediumSpec s;
  s.sources = SourceConfiguration::every_point();
  s.split_law = IntensityLaw::constant(split);
  s.death_law = IntensityLaw::constant(death);
  return s;
}

void bm_engine_d1_supercritical(benchmark::State& state) {
  const LatticeWindow w(1, 100);
  const MediumRealization m = sample_medium(homogeneous(2.0, 1.0), 1, w);
  EngineParams params;
  std::uint64_t seed = 1;
  std::int64_t events = 0;
  for (auto _ : state) {
    const Trajectory traj = simulate(m, params, w, {0}, seed++);
    events += static_cast<std::int64_t>(traj.events.size());
    benchmark::DoNotOptimize(traj.final_mu());
  }
  state.counters["events/s"] = benchmark::Counter(
      static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(bm_engine_d1_supercritical);

void bm_engine_d3_supercritical(benchmark::State& state) {
  const LatticeWindow w(3, 51);
  const MediumRealization m = sample_medium(homogeneous(2.0, 1.0), 1, w);
  EngineParams params;
  std::uint64_t seed = 1;
  std::int64_t events = 0;
  for (auto _ : state) {
    const Trajectory traj = simulate(m, params, w, {0, 0, 0}, seed++);
    events += static_cast<std::int64_t>(traj.events.size());
    benchmark::DoNotOptimize(traj.final_mu());
  }
  state.counters["events/s"] = benchmark::Counter(
      static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(bm_engine_d3_supercritical);

void bm_engine_d3_random_lazy_medium(benchmark::State& state) {
  MediumSpec spec;
  spec.sources = SourceConfiguration::every_point();
  spec.split_law = IntensityLaw::weibull(2.0, 2.26);
  spec.death_law = IntensityLaw::weibull(2.0, 1.13);
  const LatticeWindow w(3, 51);
  const MediumRealization m = sample_medium(spec, 7, w);
  EngineParams params;
  std::uint64_t seed = 1;
  std::int64_t events = 0;
  for (auto _ : state) {
    const Trajectory traj = simulate(m, params, w, {0, 0, 0}, seed++);
    events += static_cast<std::int64_t>(traj.events.size());
    benchmark::DoNotOptimize(traj.final_mu());
  }
  state.counters["events/s"] = benchmark::Counter(
      static_cast<double>(events), benchmark::Counter::kIsRate);
}
BENCHMARK(bm_engine_d3_random_lazy_medium);

void bm_oracle_rk4_step(benchmark::State& state) {
  const LatticeWindow w(1, 101);
  Field v(static_cast<std::size_t>(w.size()), 0.0);
  v[static_cast<std::size_t>(w.origin_index())] = 1.0;
  const OperatorSpec spec(w, 1.0, v);
  for (auto _ : state) {
    const M1Solution sol = solve_m1(spec, InitialCondition::TotalCount, 1.0,
                                    1e-2, w.origin_index());
    benchmark::DoNotOptimize(sol.m1_at_start.back());
  }
}
BENCHMARK(bm_oracle_rk4_step);

void bm_shapiro_wilk_250(benchmark::State& state) {
  rng::SplitMix64 g(1);
  std::vector<double> sample(250);
  for (auto& x : sample) x = g.next_open01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(shapiro_wilk(sample).w);
  }
}
BENCHMARK(bm_shapiro_wilk_250);

}  // namespace

BENCHMARK_MAIN();
