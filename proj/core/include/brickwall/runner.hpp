#pragma once

#include <span>
#include <string>
#include <vector>

#include "brickwall/analysis.hpp"
#include "brickwall/config.hpp"

namespace brickwall {

/// One flat experiment record: config echo, metrics, wall-clock time.
/// `mc_samples` is 0 when the row came from exact covariance propagation
/// rather than Monte Carlo. Every field except wall_ms is byte-stable
/// across reruns with equal seeds.
struct ResultRow {
  std::string strategy;
  std::size_t window = 0;   // f
  std::size_t stride = 0;   // effective (0 unless brick)
  std::size_t overlap = 0;  // effective (0 unless sliding_window)
  double eta = 0.0;
  std::size_t total_timesteps = 0;  // T
  std::size_t sampler_steps = 0;    // S
  double rho = 0.0;
  std::size_t channels = 0;      // d
  std::size_t target_frames = 0; // F
  std::uint64_t seed = 0;
  std::size_t mc_samples = 0;
  double cov_error_total = 0.0;
  double cov_error_boundary = 0.0;
  double marginal_var_error = 0.0;
  double mean_boundary_jump = 0.0;
  double dynamic_degree = 0.0;
  double wall_ms = 0.0;
};

/// The documented CSV column list, byte-exact.
const std::string& csv_header();

std::string to_csv(std::span<const ResultRow> rows);

/// One JSON object per row, newline-separated, keys in CSV column order.
std::string to_json_lines(std::span<const ResultRow> rows);

/// Offset and segment table of the brick plan for steps k = 0..S-1 over the
/// padded latent.
std::string run_plan(const ExperimentConfig& config);

/// Exact covariance propagation + metrics for the configured strategy.
/// Throws CapabilityError when eta > 0.
ResultRow run_covariance(const ExperimentConfig& config);

/// Monte Carlo covariance estimate + metrics, parallel over `workers`.
ResultRow run_sample(const ExperimentConfig& config);

/// One row per stride, brick strategy, in the given order. Exact engine
/// when eta = 0, Monte Carlo otherwise.
std::vector<ResultRow> run_sweep(const ExperimentConfig& config,
                                 std::span<const std::size_t> strides);

inline constexpr std::size_t kDefaultSweepStrides[] = {0, 1, 3, 5, 7, 9};

/// One row per strategy: untiled, concat, sliding_window, brick.
std::vector<ResultRow> run_compare(const ExperimentConfig& config);

}  // namespace brickwall
