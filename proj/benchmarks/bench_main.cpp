#include <benchmark/benchmark.h>

#include <random>

#include "hahn/division.hpp"

namespace {

using hahn::Rat;
using hahn::TruncatedSeries;

TruncatedSeries randomSeries(const hahn::ProfilePtr& profile, std::size_t terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  TruncatedSeries f(profile, hahn::Precision::at(Rat(40)));
  for (std::size_t i = 0; i < terms; ++i) {
    f.addTerm({Rat(static_cast<long>(rng() % 60), 3), Rat(static_cast<long>(rng() % 13) - 6, 9)},
              static_cast<hahn::Coeff>(1 + rng() % 2));
  }
  return f;
}

void BM_SeriesMul(benchmark::State& state) {
  const hahn::ResidueField field(hahn::GroundField(3), Rat(1, 2));
  const auto terms = static_cast<std::size_t>(state.range(0));
  const TruncatedSeries f = randomSeries(field.profile(), terms, 1);
  const TruncatedSeries g = randomSeries(field.profile(), terms, 2);
  for (auto _ : state) benchmark::DoNotOptimize(hahn::mul(f, g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMul)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void BM_BuildPlan(benchmark::State& state) {
  const auto stages = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    hahn::AlphaPlan plan =
        hahn::buildPlan(hahn::InstanceParams{}, stages, Rat(2 * static_cast<long>(stages + 1)));
    for (std::size_t m = 1; m <= plan.size(); ++m) benchmark::DoNotOptimize(hahn::buildAdapted(plan, m));
  }
}
BENCHMARK(BM_BuildPlan)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_Division(benchmark::State& state) {
  const hahn::ResidueField field(hahn::GroundField(3), Rat(1, 2));
  TruncatedSeries beta(field.profile());
  beta.addTerm({Rat(0), Rat(1)}, 1);
  beta.addTerm({Rat(2, 3), Rat(-1, 3)}, 2);
  beta.addTerm({Rat(2), Rat(2, 3)}, 1);
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    hahn::AlphaPlan plan = hahn::buildPlan(hahn::InstanceParams{}, 12, Rat(26));
    benchmark::DoNotOptimize(hahn::runDivision(beta, plan, steps));
  }
}
BENCHMARK(BM_Division)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
