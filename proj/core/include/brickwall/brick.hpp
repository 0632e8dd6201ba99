#pragma once

#include <cstddef>
#include <vector>

#include "brickwall/frame_sequence.hpp"

namespace brickwall {

/// Staggered-segment geometry parameters: window length f, per-step shift
/// stride, and the latent length L the plan must tile.
struct BrickConfig {
  std::size_t window = 16;        // f
  std::size_t stride = 1;         // frames shifted per sampler step, in [0, f)
  std::size_t latent_length = 0;  // L

  void validate() const;
};

/// The segment layout for one sampler step: ranges are sorted, contiguous,
/// and partition [0, L) exactly. Only the first and last may be shorter
/// than the window.
struct SegmentPlan {
  std::size_t step_index = 0;
  std::size_t offset = 0;
  std::vector<FrameRange> segments;
};

/// How a short segment is denoised: run the model on `extended` (always
/// exactly one window long) and keep only the frames of `keep`.
struct ExtensionRule {
  FrameRange extended;
  FrameRange keep;
};

/// Offset of the segment layout at sampler step k: (stride * k) mod f.
std::size_t offset_for_step(std::size_t stride, std::size_t window, std::size_t step_index);

/// Segment layout at step k. A latent no longer than the window is a single
/// segment for every k; otherwise the offset splits off a short head, full
/// windows follow, and a short tail absorbs the remainder.
SegmentPlan build_plan(const BrickConfig& config, std::size_t step_index);

/// Extension window for a segment shorter than f: a short head extends
/// forward to [0, f); a short tail extends backward to [L - f, L).
ExtensionRule extension_rule(const FrameRange& segment, std::size_t latent_length,
                             std::size_t window);

/// Length of the noise-padded latent: F + 2f.
std::size_t padded_length(std::size_t target_frames, std::size_t window);

/// The middle F frames of a padded length-(F + 2f) sequence.
FrameSequence crop_middle(const FrameSequence& seq, std::size_t target_frames,
                          std::size_t window);

}  // namespace brickwall
