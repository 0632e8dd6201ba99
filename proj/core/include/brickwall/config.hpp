#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "brickwall/sampler.hpp"

namespace brickwall {

/// Every knob of one experiment, parsed from the flat `key = value` config
/// format. Defaults give the standard comparison geometry: three windows of
/// 16 frames, 50 deterministic DDIM steps, rho = 0.9.
struct ExperimentConfig {
  StrategyKind strategy = StrategyKind::Brick;
  std::size_t target_frames = 48;  // F
  std::size_t window = 16;         // f
  std::size_t stride = 1;
  std::optional<std::size_t> overlap;  // defaults to window / 2
  double eta = 0.0;
  std::size_t total_timesteps = 1000;  // T
  std::size_t sampler_steps = 50;      // S
  double beta_start = kDefaultBetaStart;
  double beta_end = kDefaultBetaEnd;
  double rho = 0.9;
  std::size_t channels = 4;  // d
  std::uint64_t seed = 0;
  std::size_t mc_samples = 5000;
  std::size_t workers = 1;

  std::size_t effective_overlap() const { return overlap ? *overlap : window / 2; }

  StrategyConfig strategy_config() const;
  StrategyConfig strategy_config(StrategyKind kind) const;

  /// Throws ValidationError naming the violated invariant.
  void validate() const;
};

/// Parses the documented `key = value` format: one key per line, `#`
/// comments, unknown keys rejected. The result is validated.
ExperimentConfig parse_config(std::string_view text);

}  // namespace brickwall
