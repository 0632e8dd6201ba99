#include <benchmark/benchmark.h>

#include "brickwall/analysis.hpp"
#include "brickwall/brick.hpp"
#include "brickwall/denoiser.hpp"
#include "brickwall/sampler.hpp"

namespace {

using namespace brickwall;

struct Fixture {
  NoiseSchedule schedule = build_linear_schedule(1000);
  StepLadder ladder = ddim_ladder(1000, 50);
  GpOracleDenoiser denoiser{GpOracleParams{0.9, 16, 4}, build_linear_schedule(1000)};
};

const Fixture& fixture() {
  static Fixture f;
  return f;
}

void BM_BrickStep(benchmark::State& state) {
  const Fixture& f = fixture();
  const std::size_t length = padded_length(48, 16);
  SeededRng rng(1);
  FrameSequence z(length, 4, sample_standard_normal(rng, length * 4));
  const SegmentPlan plan = build_plan({16, 1, length}, 3);
  const std::size_t workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brick_step(z, plan, f.denoiser, 500, 480, f.schedule, 0.0,
                                        SeededRng(7), workers));
  }
}
BENCHMARK(BM_BrickStep)->Arg(1)->Arg(2)->Arg(4);

void BM_SampleRun(benchmark::State& state) {
  const Fixture& f = fixture();
  StrategyConfig strategy;
  strategy.kind = static_cast<StrategyKind>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    if (strategy.kind == StrategyKind::Untiled) {
      GpOracleDenoiser wide{GpOracleParams{0.9, padded_length(48, 16), 4},
                            f.schedule};
      benchmark::DoNotOptimize(
          sample(strategy, f.schedule, f.ladder, wide, 48, 4, seed++));
    } else {
      benchmark::DoNotOptimize(
          sample(strategy, f.schedule, f.ladder, f.denoiser, 48, 4, seed++));
    }
  }
}
BENCHMARK(BM_SampleRun)
    ->Arg(static_cast<int>(StrategyKind::Untiled))
    ->Arg(static_cast<int>(StrategyKind::Concat))
    ->Arg(static_cast<int>(StrategyKind::Brick))
    ->Arg(static_cast<int>(StrategyKind::SlidingWindow));

void BM_McCovariance(benchmark::State& state) {
  const Fixture& f = fixture();
  StrategyConfig strategy;
  const std::size_t workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_covariance_mc(strategy, f.schedule, f.ladder,
                                                    f.denoiser, 48, 4, 200, 0, workers));
  }
}
BENCHMARK(BM_McCovariance)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExactPropagation(benchmark::State& state) {
  const Fixture& f = fixture();
  StrategyConfig strategy;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        propagate_covariance(strategy, f.schedule, f.ladder, f.denoiser, 48, 4));
  }
}
BENCHMARK(BM_ExactPropagation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
