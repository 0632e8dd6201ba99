#pragma once

#include <cstdint>
#include <vector>

#include "brickwall/denoiser.hpp"
#include "brickwall/matrix.hpp"
#include "brickwall/sampler.hpp"
#include "brickwall/schedule.hpp"

namespace brickwall {

/// Desk-scale consistency and fidelity metrics computed from a covariance
/// matrix against the AR(1) target:
///   cov_error_total    Frobenius distance to the target
///   cov_error_boundary same, restricted to entries straddling a stride-0
///                      block boundary within one window length
///   marginal_var_error max |Cov_ii - 1|
///   boundary_jumps     E[(z_b - z_{b-1})^2] per block junction
///   dynamic_degree     mean over adjacent pairs of E[(z_{i+1} - z_i)^2]
struct MetricsReport {
  double cov_error_total = 0.0;
  double cov_error_boundary = 0.0;
  double marginal_var_error = 0.0;
  std::vector<double> boundary_jumps;
  double dynamic_degree = 0.0;

  double mean_boundary_jump() const;
};

/// The linear map one deterministic sampler step applies to the padded
/// latent (per channel). Built by probing the denoiser with basis vectors
/// and composing with the affine DDIM update; requires eta = 0 and a
/// denoiser that passes a linearity probe (NonlinearDenoiser otherwise).
Matrix step_operator(const SegmentPlan& plan, const Denoiser& denoiser, std::size_t t,
                     std::size_t t_prev, const NoiseSchedule& schedule);

/// Same for the sliding-window strategy: per-window operators accumulated
/// and left-multiplied by the frame-averaging matrix.
Matrix sliding_step_operator(std::size_t length, std::size_t window, std::size_t overlap,
                             const Denoiser& denoiser, std::size_t t, std::size_t t_prev,
                             const NoiseSchedule& schedule);

/// Exact output covariance of a deterministic run: composes the per-step
/// operators over the padded length, forms M M^T (initial z ~ N(0, I)), and
/// returns the central F x F block.
Matrix propagate_covariance(const StrategyConfig& strategy, const NoiseSchedule& schedule,
                            const StepLadder& ladder, const Denoiser& denoiser,
                            std::size_t target_frames, std::size_t channels);

/// Empirical second-moment matrix over `samples` independent runs, channels
/// pooled as independent replicas. Deterministic in (seed) for any worker
/// count.
Matrix estimate_covariance_mc(const StrategyConfig& strategy,
                              const NoiseSchedule& schedule, const StepLadder& ladder,
                              const Denoiser& denoiser, std::size_t target_frames,
                              std::size_t channels, std::size_t samples,
                              std::uint64_t seed, std::size_t workers = 1);

/// Metrics of `cov` against `target`; block junctions are the multiples of
/// `window` strictly inside the frame range.
MetricsReport metrics(const Matrix& cov, const Matrix& target, std::size_t window);

}  // namespace brickwall
