#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "brickwall/brick.hpp"
#include "brickwall/denoiser.hpp"
#include "brickwall/frame_sequence.hpp"
#include "brickwall/rng.hpp"
#include "brickwall/schedule.hpp"

namespace brickwall {

enum class StrategyKind { Untiled, Concat, Brick, SlidingWindow };

const char* strategy_name(StrategyKind kind);

/// Which tiling strategy drives the denoising loop, plus its parameters.
/// `stride` matters for Brick only (Concat is Brick with stride pinned to 0);
/// `overlap` matters for SlidingWindow only.
struct StrategyConfig {
  StrategyKind kind = StrategyKind::Brick;
  std::size_t window = 16;  // f
  std::size_t stride = 1;
  std::size_t overlap = 8;
  double eta = 0.0;

  void validate() const;

  /// Stride actually applied per step: Concat and the non-tiled strategies
  /// shift by 0.
  std::size_t effective_stride() const;
};

/// One DDIM update z_t -> z_{t_prev}:
///   x0_hat = (z - sqrt(1-a_t) eps_hat) / sqrt(a_t)
///   sigma  = eta sqrt((1-a_prev)/(1-a_t)) sqrt(1 - a_t/a_prev)
///   z_prev = sqrt(a_prev) x0_hat + sqrt(1-a_prev-sigma^2) eps_hat + sigma xi
/// eta = 0 is deterministic and consumes no randomness.
FrameSequence ddim_step(const FrameSequence& z, const FrameSequence& eps_hat,
                        std::size_t t, std::size_t t_prev, const NoiseSchedule& schedule,
                        double eta, SeededRng& rng);

/// What the model actually sees for one segment: short head/tail segments
/// are denoised on their extension window and only `keep` is written back.
struct SegmentExec {
  FrameRange predict_range;
  FrameRange keep;
};

std::vector<SegmentExec> segment_execution(const SegmentPlan& plan, std::size_t window);

/// Denoises every segment of the plan independently (predict + ddim_step)
/// and concatenates the kept ranges. Segment i draws from step_rng.split(i),
/// so processing order and worker count never change the output.
FrameSequence brick_step(const FrameSequence& z, const SegmentPlan& plan,
                         const Denoiser& denoiser, std::size_t t, std::size_t t_prev,
                         const NoiseSchedule& schedule, double eta,
                         const SeededRng& step_rng, std::size_t workers = 1,
                         const Condition& condition = {});

/// brick_step with an explicit segment processing order (verification hook;
/// any permutation of 0..segments-1 gives bit-identical output).
FrameSequence brick_step_ordered(const FrameSequence& z, const SegmentPlan& plan,
                                 const Denoiser& denoiser, std::size_t t,
                                 std::size_t t_prev, const NoiseSchedule& schedule,
                                 double eta, const SeededRng& step_rng,
                                 std::span<const std::size_t> order,
                                 const Condition& condition = {});

/// Window start offsets 0, f-overlap, 2(f-overlap), ... with the final
/// window clamped to end at `length`.
std::vector<std::size_t> sliding_window_starts(std::size_t length, std::size_t window,
                                               std::size_t overlap);

/// Denoises overlapping windows independently and merges by per-frame
/// arithmetic mean. Window w draws from step_rng.split(w).
FrameSequence sliding_window_step(const FrameSequence& z, std::size_t window,
                                  std::size_t overlap, const Denoiser& denoiser,
                                  std::size_t t, std::size_t t_prev,
                                  const NoiseSchedule& schedule, double eta,
                                  const SeededRng& step_rng, std::size_t workers = 1,
                                  const Condition& condition = {});

/// Called after each completed sampler step with the current padded latent.
using StepObserver =
    std::function<void(std::size_t step_index, const FrameSequence& latent)>;

/// Full sampling run: pads the initial noise to F + 2f frames, walks the
/// ladder applying the strategy's step, and crops the middle F frames.
/// Bit-deterministic in (strategy, schedule, ladder, seed) for any worker
/// count.
FrameSequence sample(const StrategyConfig& strategy, const NoiseSchedule& schedule,
                     const StepLadder& ladder, const Denoiser& denoiser,
                     std::size_t target_frames, std::size_t channels, std::uint64_t seed,
                     std::size_t workers = 1, const StepObserver& observer = {},
                     const Condition& condition = {});

}  // namespace brickwall
