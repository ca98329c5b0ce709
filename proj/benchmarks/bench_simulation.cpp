#include <benchmark/benchmark.h>

#include <memory>

#include "skewdiff/coupling.hpp"
#include "skewdiff/gdiff.hpp"
#include "skewdiff/rng.hpp"
#include "skewdiff/sbm.hpp"
#include "skewdiff/wiener.hpp"

namespace {

using namespace skewdiff;

std::shared_ptr<const WienerPath> make_driver(std::size_t steps, std::size_t dims) {
  auto s = path_stream(1, 0, 0);
  return std::make_shared<const WienerPath>(sample_wiener(make_grid(1.0, steps), dims, s));
}

void BM_SampleWiener(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const auto grid = make_grid(1.0, steps);
  std::uint64_t path = 0;
  for (auto _ : state) {
    auto s = path_stream(1, path++, 0);
    benchmark::DoNotOptimize(sample_wiener(grid, 1, s));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleWiener)->Arg(1000)->Arg(10000);

void BM_MollifiedScheme(benchmark::State& state) {
  const auto w = make_driver(static_cast<std::size_t>(state.range(0)), 1);
  const SbmParams p{0.6, 0.0, 256};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_sbm_mollified(p, w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MollifiedScheme)->Arg(1000)->Arg(10000);

void BM_ReflectedScheme(benchmark::State& state) {
  const auto w = make_driver(10000, 1);
  const SbmParams p{1.0, 0.2, 256};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_sbm(p, w));
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_ReflectedScheme);

void BM_Gdiff(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const auto c = make_profile("mixed", dim, ProfileParams{0.5, 0.5, 1.0}, 0.5);
  const auto frame = HyperplaneFrame::canonical(dim);
  const auto w = make_driver(10000, dim);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_gdiff(c, x0, frame, w, path_stream(1, 0, 1)));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_Gdiff)->Arg(2)->Arg(3)->Arg(8);

void BM_Corollary1Experiment(benchmark::State& state) {
  McConfig cfg;
  cfg.steps = 2000;
  cfg.paths = 200;
  cfg.seed = 3;
  cfg.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(corollary1_experiment(0.0, 0.6, 0.2, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.paths);
}
BENCHMARK(BM_Corollary1Experiment)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
