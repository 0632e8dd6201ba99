#pragma once

#include <cstddef>
#include <vector>

namespace brickwall {

/// Cumulative signal-retention levels of the forward noising process.
/// alpha_bar has T+1 entries indexed by timestep; alpha_bar[0] == 1 exactly,
/// and the sequence is strictly decreasing within (0, 1].
struct NoiseSchedule {
  std::size_t total_timesteps = 0;  // T
  std::vector<double> alpha_bar;    // size T+1

  double alpha_bar_at(std::size_t t) const { return alpha_bar.at(t); }
};

/// Descending subsequence of timesteps the sampler visits: S+1 entries from
/// T down to 0, strictly descending.
struct StepLadder {
  std::size_t step_count = 0;  // S
  std::vector<std::size_t> timesteps;
};

inline constexpr std::size_t kDefaultTrainTimesteps = 1000;
inline constexpr double kDefaultBetaStart = 1e-4;
inline constexpr double kDefaultBetaEnd = 2e-2;

/// Linear beta schedule: beta_t interpolated over t = 1..T,
/// alpha_bar[t] = prod_{u<=t} (1 - beta_u).
NoiseSchedule build_linear_schedule(std::size_t total_timesteps,
                                    double beta_start = kDefaultBetaStart,
                                    double beta_end = kDefaultBetaEnd);

/// Uniformly spaced DDIM ladder: timestep_k = round(T * (S - k) / S) with
/// ties rounding half-up, k = 0..S.
StepLadder ddim_ladder(std::size_t total_timesteps, std::size_t step_count);

}  // namespace brickwall
