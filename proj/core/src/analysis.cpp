#include "brickwall/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "brickwall/brick.hpp"
#include "brickwall/errors.hpp"
#include "brickwall/parallel.hpp"
#include "brickwall/rng.hpp"

namespace brickwall {

double MetricsReport::mean_boundary_jump() const {
  if (boundary_jumps.empty()) return 0.0;
  const double sum = std::accumulate(boundary_jumps.begin(), boundary_jumps.end(), 0.0);
  return sum / static_cast<double>(boundary_jumps.size());
}

namespace {

double max_abs(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

// Additivity/homogeneity probe on random vectors plus a zero-intercept
// check. Tolerance is relative to the probe magnitudes.
void require_linear(const Denoiser& denoiser, std::size_t n, std::size_t t) {
  SeededRng rng(0x6c696e65);  // fixed probe stream
  const Condition cond{};
  FrameSequence z1(n, 1, sample_standard_normal(rng, n));
  FrameSequence z2(n, 1, sample_standard_normal(rng, n));
  const double a = 0.731, b = -1.417;

  FrameSequence combined(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    combined.at(i, 0) = a * z1.at(i, 0) + b * z2.at(i, 0);
  }
  const FrameSequence p1 = denoiser.predict(z1, t, cond);
  const FrameSequence p2 = denoiser.predict(z2, t, cond);
  const FrameSequence pc = denoiser.predict(combined, t, cond);

  double scale = std::max({max_abs(p1.values()), max_abs(p2.values()), 1.0});
  for (std::size_t i = 0; i < n; ++i) {
    const double expected = a * p1.at(i, 0) + b * p2.at(i, 0);
    if (std::abs(pc.at(i, 0) - expected) > 1e-10 * scale) {
      throw NonlinearDenoiser("step_operator: denoiser failed the linearity probe");
    }
  }
  const FrameSequence pz = denoiser.predict(FrameSequence(n, 1), t, cond);
  if (max_abs(pz.values()) > 1e-12) {
    throw NonlinearDenoiser("step_operator: denoiser has a nonzero intercept");
  }
}

// B = c1 I + c2 E where E is the noise-prediction matrix extracted by basis
// probes and (c1, c2) are the deterministic DDIM coefficients.
Matrix window_step_matrix(const Denoiser& denoiser, std::size_t n, std::size_t t,
                          std::size_t t_prev, const NoiseSchedule& schedule) {
  const double a = schedule.alpha_bar_at(t);
  const double a_prev = schedule.alpha_bar_at(t_prev);
  const double c1 = std::sqrt(a_prev / a);
  const double c2 = std::sqrt(1.0 - a_prev) - c1 * std::sqrt(1.0 - a);

  const Condition cond{};
  Matrix b(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    FrameSequence basis(n, 1);
    basis.at(j, 0) = 1.0;
    const FrameSequence col = denoiser.predict(basis, t, cond);
    for (std::size_t i = 0; i < n; ++i) {
      b(i, j) = c2 * col.at(i, 0) + (i == j ? c1 : 0.0);
    }
  }
  return b;
}

}  // namespace

Matrix step_operator(const SegmentPlan& plan, const Denoiser& denoiser, std::size_t t,
                     std::size_t t_prev, const NoiseSchedule& schedule) {
  if (t <= t_prev || t > schedule.total_timesteps) {
    throw InvalidTimestepPair("step_operator: need T >= t > t_prev >= 0");
  }
  const auto exec = segment_execution(plan, denoiser.window());
  const std::size_t length = plan.segments.back().end;

  std::vector<std::size_t> lengths;
  for (const SegmentExec& e : exec) {
    const std::size_t n = e.predict_range.length();
    if (n > denoiser.window()) {
      throw WindowExceeded("step_operator: segment exceeds the denoiser window");
    }
    if (std::find(lengths.begin(), lengths.end(), n) == lengths.end()) {
      lengths.push_back(n);
    }
  }
  std::vector<Matrix> window_ops;
  window_ops.reserve(lengths.size());
  for (std::size_t n : lengths) {
    require_linear(denoiser, n, t);
    window_ops.push_back(window_step_matrix(denoiser, n, t, t_prev, schedule));
  }
  auto op_for = [&](std::size_t n) -> const Matrix& {
    const auto it = std::find(lengths.begin(), lengths.end(), n);
    return window_ops[static_cast<std::size_t>(it - lengths.begin())];
  };

  Matrix a(length, length);
  for (const SegmentExec& e : exec) {
    const Matrix& b = op_for(e.predict_range.length());
    const std::size_t row_shift = e.keep.start - e.predict_range.start;
    for (std::size_t r = 0; r < e.keep.length(); ++r) {
      for (std::size_t c = 0; c < e.predict_range.length(); ++c) {
        a(e.keep.start + r, e.predict_range.start + c) = b(row_shift + r, c);
      }
    }
  }
  return a;
}

Matrix sliding_step_operator(std::size_t length, std::size_t window, std::size_t overlap,
                             const Denoiser& denoiser, std::size_t t, std::size_t t_prev,
                             const NoiseSchedule& schedule) {
  if (t <= t_prev || t > schedule.total_timesteps) {
    throw InvalidTimestepPair("sliding_step_operator: need T >= t > t_prev >= 0");
  }
  if (window > denoiser.window()) {
    throw WindowExceeded("sliding_step_operator: window exceeds the denoiser window");
  }
  const auto starts = sliding_window_starts(length, window, overlap);
  require_linear(denoiser, window, t);
  const Matrix b = window_step_matrix(denoiser, window, t, t_prev, schedule);

  Matrix a(length, length);
  std::vector<std::size_t> cover(length, 0);
  for (const std::size_t s : starts) {
    for (std::size_t r = 0; r < window; ++r) {
      ++cover[s + r];
      for (std::size_t c = 0; c < window; ++c) {
        a(s + r, s + c) += b(r, c);
      }
    }
  }
  for (std::size_t i = 0; i < length; ++i) {
    const double inv = 1.0 / static_cast<double>(cover[i]);
    for (std::size_t j = 0; j < length; ++j) a(i, j) *= inv;
  }
  return a;
}

Matrix propagate_covariance(const StrategyConfig& strategy, const NoiseSchedule& schedule,
                            const StepLadder& ladder, const Denoiser& denoiser,
                            std::size_t target_frames, std::size_t channels) {
  strategy.validate();
  if (channels < 1) {
    throw SizeMismatch("propagate_covariance: channels must be >= 1");
  }
  if (strategy.eta != 0.0) {
    throw CapabilityError(
        "propagate_covariance: eta > 0 is stochastic; estimate it by sampling");
  }
  const std::size_t f = strategy.window;
  const std::size_t length = padded_length(target_frames, f);

  Matrix composed = Matrix::identity(length);
  for (std::size_t k = 0; k < ladder.step_count; ++k) {
    const std::size_t t = ladder.timesteps[k];
    const std::size_t t_prev = ladder.timesteps[k + 1];
    Matrix step(1, 1);
    switch (strategy.kind) {
      case StrategyKind::Untiled: {
        SegmentPlan plan;
        plan.step_index = k;
        plan.segments.push_back({0, length});
        step = step_operator(plan, denoiser, t, t_prev, schedule);
        break;
      }
      case StrategyKind::Brick:
      case StrategyKind::Concat: {
        const BrickConfig config{f, strategy.effective_stride(), length};
        step = step_operator(build_plan(config, k), denoiser, t, t_prev, schedule);
        break;
      }
      case StrategyKind::SlidingWindow: {
        step = sliding_step_operator(length, f, strategy.overlap, denoiser, t, t_prev,
                                     schedule);
        break;
      }
    }
    composed = multiply(step, composed);
  }

  const Matrix cov_padded = multiply_self_transposed(composed);
  Matrix cov(target_frames, target_frames);
  for (std::size_t i = 0; i < target_frames; ++i) {
    for (std::size_t j = 0; j < target_frames; ++j) {
      cov(i, j) = cov_padded(f + i, f + j);
    }
  }
  return cov;
}

Matrix estimate_covariance_mc(const StrategyConfig& strategy,
                              const NoiseSchedule& schedule, const StepLadder& ladder,
                              const Denoiser& denoiser, std::size_t target_frames,
                              std::size_t channels, std::size_t samples,
                              std::uint64_t seed, std::size_t workers) {
  if (samples < 2) {
    throw SizeMismatch("estimate_covariance_mc: need at least 2 samples");
  }
  const SeededRng base(seed);

  // Generate in parallel, reduce sequentially in run order so the result is
  // identical for every worker count.
  std::vector<std::vector<double>> runs(samples);
  parallel_for(workers, samples, [&](std::size_t i) {
    const FrameSequence out = sample(strategy, schedule, ladder, denoiser,
                                     target_frames, channels, base.split(i).seed());
    runs[i].assign(out.values().begin(), out.values().end());
  });

  Matrix cov(target_frames, target_frames);
  for (const auto& run : runs) {
    for (std::size_t c = 0; c < channels; ++c) {
      for (std::size_t p = 0; p < target_frames; ++p) {
        const double vp = run[p * channels + c];
        for (std::size_t q = 0; q <= p; ++q) {
          cov(p, q) += vp * run[q * channels + c];
        }
      }
    }
  }
  const double inv = 1.0 / static_cast<double>(samples * channels);
  for (std::size_t p = 0; p < target_frames; ++p) {
    for (std::size_t q = 0; q <= p; ++q) {
      cov(p, q) *= inv;
      cov(q, p) = cov(p, q);
    }
  }
  return cov;
}

MetricsReport metrics(const Matrix& cov, const Matrix& target, std::size_t window) {
  if (cov.rows() != cov.cols() || target.rows() != target.cols() ||
      cov.rows() != target.rows()) {
    throw SizeMismatch("metrics: covariance and target sizes differ");
  }
  if (window < 1) {
    throw SizeMismatch("metrics: window must be >= 1");
  }
  const std::size_t n = cov.rows();

  MetricsReport report;
  report.cov_error_total = frobenius_distance(cov, target);

  std::vector<std::size_t> boundaries;
  for (std::size_t b = window; b < n; b += window) boundaries.push_back(b);

  // Entries (i, j) straddling a block boundary with |i - j| < window,
  // counted symmetrically like a masked Frobenius norm.
  double boundary_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && j - i < window; ++j) {
      bool straddles = false;
      for (const std::size_t b : boundaries) {
        if (i < b && b <= j) {
          straddles = true;
          break;
        }
      }
      if (!straddles) continue;
      const double d = cov(i, j) - target(i, j);
      boundary_sq += 2.0 * d * d;
    }
  }
  report.cov_error_boundary = std::sqrt(boundary_sq);

  double var_err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    var_err = std::max(var_err, std::abs(cov(i, i) - 1.0));
  }
  report.marginal_var_error = var_err;

  for (const std::size_t b : boundaries) {
    report.boundary_jumps.push_back(cov(b, b) + cov(b - 1, b - 1) - 2.0 * cov(b - 1, b));
  }

  if (n > 1) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      acc += cov(i, i) + cov(i + 1, i + 1) - 2.0 * cov(i, i + 1);
    }
    report.dynamic_degree = acc / static_cast<double>(n - 1);
  }
  return report;
}

}  // namespace brickwall
