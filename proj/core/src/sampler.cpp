#include "brickwall/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "brickwall/errors.hpp"
#include "brickwall/parallel.hpp"

namespace brickwall {

const char* strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::Untiled:       return "untiled";
    case StrategyKind::Concat:        return "concat";
    case StrategyKind::Brick:         return "brick";
    case StrategyKind::SlidingWindow: return "sliding_window";
  }
  return "unknown";
}

void StrategyConfig::validate() const {
  if (window < 1) {
    throw InvalidBrickConfig("strategy: window must be >= 1");
  }
  if (kind == StrategyKind::Brick && stride >= window) {
    throw InvalidBrickConfig("strategy: stride must satisfy 0 <= stride < window");
  }
  if (kind == StrategyKind::SlidingWindow && (overlap < 1 || overlap >= window)) {
    throw InvalidOverlap("strategy: overlap must satisfy 1 <= overlap < window");
  }
  if (!(eta >= 0.0) || !(eta <= 1.0)) {
    throw InvalidBrickConfig("strategy: eta must be in [0, 1]");
  }
}

std::size_t StrategyConfig::effective_stride() const {
  return kind == StrategyKind::Brick ? stride : 0;
}

FrameSequence ddim_step(const FrameSequence& z, const FrameSequence& eps_hat,
                        std::size_t t, std::size_t t_prev, const NoiseSchedule& schedule,
                        double eta, SeededRng& rng) {
  if (!z.same_shape(eps_hat)) {
    throw ShapeMismatch("ddim_step: latent and prediction shapes differ");
  }
  if (t <= t_prev || t > schedule.total_timesteps) {
    throw InvalidTimestepPair("ddim_step: need T >= t > t_prev >= 0");
  }
  const double a = schedule.alpha_bar_at(t);
  const double a_prev = schedule.alpha_bar_at(t_prev);

  const double inv_root_a = 1.0 / std::sqrt(a);
  const double root_1ma = std::sqrt(1.0 - a);
  const double root_a_prev = std::sqrt(a_prev);
  const double sigma =
      eta * std::sqrt((1.0 - a_prev) / (1.0 - a)) * std::sqrt(1.0 - a / a_prev);
  const double eps_coef = std::sqrt(std::max(0.0, 1.0 - a_prev - sigma * sigma));

  FrameSequence out(z.frames(), z.channels());
  for (std::size_t i = 0; i < z.frames(); ++i) {
    for (std::size_t c = 0; c < z.channels(); ++c) {
      const double x0 = (z.at(i, c) - root_1ma * eps_hat.at(i, c)) * inv_root_a;
      out.at(i, c) = root_a_prev * x0 + eps_coef * eps_hat.at(i, c);
    }
  }
  if (sigma > 0.0) {
    for (std::size_t i = 0; i < z.frames(); ++i) {
      for (std::size_t c = 0; c < z.channels(); ++c) {
        out.at(i, c) += sigma * rng.next_normal();
      }
    }
  }
  return out;
}

std::vector<SegmentExec> segment_execution(const SegmentPlan& plan, std::size_t window) {
  if (plan.segments.empty()) {
    throw InvalidBrickConfig("segment_execution: empty plan");
  }
  const std::size_t length = plan.segments.back().end;
  std::vector<SegmentExec> exec;
  exec.reserve(plan.segments.size());
  for (std::size_t i = 0; i < plan.segments.size(); ++i) {
    const FrameRange seg = plan.segments[i];
    const bool edge = i == 0 || i + 1 == plan.segments.size();
    if (plan.segments.size() > 1 && edge && seg.length() < window) {
      const ExtensionRule rule = extension_rule(seg, length, window);
      exec.push_back({rule.extended, rule.keep});
    } else {
      exec.push_back({seg, seg});
    }
  }
  return exec;
}

namespace {

void check_plan_covers(const SegmentPlan& plan, const FrameSequence& z) {
  if (plan.segments.empty() || plan.segments.front().start != 0 ||
      plan.segments.back().end != z.frames()) {
    throw ShapeMismatch("brick_step: plan does not cover the latent");
  }
  for (std::size_t i = 1; i < plan.segments.size(); ++i) {
    if (plan.segments[i].start != plan.segments[i - 1].end) {
      throw ShapeMismatch("brick_step: plan has gaps or overlaps");
    }
  }
}

// Denoise one segment and write its kept range into out. Draws come from
// step_rng.split(segment_index) only, so this is order-independent.
void run_segment(const FrameSequence& z, const SegmentExec& exec,
                 std::size_t segment_index, const Denoiser& denoiser, std::size_t t,
                 std::size_t t_prev, const NoiseSchedule& schedule, double eta,
                 const SeededRng& step_rng, const Condition& condition,
                 FrameSequence& out) {
  SeededRng rng = step_rng.split(segment_index);
  const FrameSequence window_z = z.slice(exec.predict_range);
  const FrameSequence eps = denoiser.predict(window_z, t, condition);
  const FrameSequence stepped = ddim_step(window_z, eps, t, t_prev, schedule, eta, rng);
  if (exec.keep == exec.predict_range) {
    out.assign(exec.keep, stepped);
  } else {
    const FrameRange local{exec.keep.start - exec.predict_range.start,
                           exec.keep.end - exec.predict_range.start};
    out.assign(exec.keep, stepped.slice(local));
  }
}

}  // namespace

FrameSequence brick_step(const FrameSequence& z, const SegmentPlan& plan,
                         const Denoiser& denoiser, std::size_t t, std::size_t t_prev,
                         const NoiseSchedule& schedule, double eta,
                         const SeededRng& step_rng, std::size_t workers,
                         const Condition& condition) {
  check_plan_covers(plan, z);
  const auto exec = segment_execution(plan, denoiser.window());
  for (const SegmentExec& e : exec) {
    if (e.predict_range.length() > denoiser.window()) {
      throw WindowExceeded("brick_step: segment exceeds the denoiser window");
    }
  }
  FrameSequence out(z.frames(), z.channels());
  parallel_for(workers, exec.size(), [&](std::size_t i) {
    run_segment(z, exec[i], i, denoiser, t, t_prev, schedule, eta, step_rng, condition,
                out);
  });
  return out;
}

FrameSequence brick_step_ordered(const FrameSequence& z, const SegmentPlan& plan,
                                 const Denoiser& denoiser, std::size_t t,
                                 std::size_t t_prev, const NoiseSchedule& schedule,
                                 double eta, const SeededRng& step_rng,
                                 std::span<const std::size_t> order,
                                 const Condition& condition) {
  check_plan_covers(plan, z);
  const auto exec = segment_execution(plan, denoiser.window());
  if (order.size() != exec.size()) {
    throw ShapeMismatch("brick_step_ordered: order must index every segment once");
  }
  FrameSequence out(z.frames(), z.channels());
  for (const std::size_t i : order) {
    run_segment(z, exec.at(i), i, denoiser, t, t_prev, schedule, eta, step_rng,
                condition, out);
  }
  return out;
}

std::vector<std::size_t> sliding_window_starts(std::size_t length, std::size_t window,
                                               std::size_t overlap) {
  if (overlap < 1 || overlap >= window) {
    throw InvalidOverlap("sliding windows: overlap must satisfy 1 <= overlap < window");
  }
  if (length < window) {
    throw LatentTooShort("sliding windows: latent is shorter than the window");
  }
  std::vector<std::size_t> starts;
  std::size_t s = 0;
  for (;;) {
    if (s + window >= length) {
      starts.push_back(length - window);
      break;
    }
    starts.push_back(s);
    s += window - overlap;
  }
  return starts;
}

FrameSequence sliding_window_step(const FrameSequence& z, std::size_t window,
                                  std::size_t overlap, const Denoiser& denoiser,
                                  std::size_t t, std::size_t t_prev,
                                  const NoiseSchedule& schedule, double eta,
                                  const SeededRng& step_rng, std::size_t workers,
                                  const Condition& condition) {
  if (window > denoiser.window()) {
    throw WindowExceeded("sliding_window_step: window exceeds the denoiser window");
  }
  const auto starts = sliding_window_starts(z.frames(), window, overlap);

  std::vector<std::vector<double>> results(starts.size());
  parallel_for(workers, starts.size(), [&](std::size_t w) {
    SeededRng rng = step_rng.split(w);
    const FrameRange range{starts[w], starts[w] + window};
    const FrameSequence window_z = z.slice(range);
    const FrameSequence eps = denoiser.predict(window_z, t, condition);
    const FrameSequence stepped =
        ddim_step(window_z, eps, t, t_prev, schedule, eta, rng);
    results[w].assign(stepped.values().begin(), stepped.values().end());
  });

  // Merge in window order: sum the covering window results, divide by count.
  const std::size_t d = z.channels();
  FrameSequence out(z.frames(), d);
  std::vector<std::size_t> cover(z.frames(), 0);
  for (std::size_t w = 0; w < starts.size(); ++w) {
    for (std::size_t i = 0; i < window; ++i) {
      const std::size_t frame = starts[w] + i;
      ++cover[frame];
      for (std::size_t c = 0; c < d; ++c) {
        out.at(frame, c) += results[w][i * d + c];
      }
    }
  }
  for (std::size_t i = 0; i < z.frames(); ++i) {
    const double inv = 1.0 / static_cast<double>(cover[i]);
    for (std::size_t c = 0; c < d; ++c) out.at(i, c) *= inv;
  }
  return out;
}

FrameSequence sample(const StrategyConfig& strategy, const NoiseSchedule& schedule,
                     const StepLadder& ladder, const Denoiser& denoiser,
                     std::size_t target_frames, std::size_t channels, std::uint64_t seed,
                     std::size_t workers, const StepObserver& observer,
                     const Condition& condition) {
  strategy.validate();
  if (target_frames < 1 || channels < 1) {
    throw ShapeMismatch("sample: target frames and channels must be >= 1");
  }
  const bool tiled = strategy.kind != StrategyKind::Untiled;
  if (tiled && denoiser.window() != strategy.window) {
    throw WindowExceeded("sample: denoiser window must equal the strategy window");
  }

  const std::size_t f = strategy.window;
  const std::size_t length = padded_length(target_frames, f);
  const SeededRng base(seed);

  SeededRng init_rng = base.split(0);
  FrameSequence z(length, channels,
                  sample_standard_normal(init_rng, length * channels));

  for (std::size_t k = 0; k < ladder.step_count; ++k) {
    const std::size_t t = ladder.timesteps[k];
    const std::size_t t_prev = ladder.timesteps[k + 1];
    const SeededRng step_rng = base.split(k + 1);

    switch (strategy.kind) {
      case StrategyKind::Untiled: {
        SegmentPlan plan;
        plan.step_index = k;
        plan.segments.push_back({0, length});
        z = brick_step(z, plan, denoiser, t, t_prev, schedule, strategy.eta, step_rng,
                       workers, condition);
        break;
      }
      case StrategyKind::Brick:
      case StrategyKind::Concat: {
        const BrickConfig config{f, strategy.effective_stride(), length};
        const SegmentPlan plan = build_plan(config, k);
        z = brick_step(z, plan, denoiser, t, t_prev, schedule, strategy.eta, step_rng,
                       workers, condition);
        break;
      }
      case StrategyKind::SlidingWindow: {
        z = sliding_window_step(z, f, strategy.overlap, denoiser, t, t_prev, schedule,
                                strategy.eta, step_rng, workers, condition);
        break;
      }
    }
    if (observer) observer(k, z);
  }
  return crop_middle(z, target_frames, f);
}

}  // namespace brickwall
