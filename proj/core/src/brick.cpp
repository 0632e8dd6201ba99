#include "brickwall/brick.hpp"

#include "brickwall/errors.hpp"

namespace brickwall {

void BrickConfig::validate() const {
  if (window < 1) {
    throw InvalidBrickConfig("brick config: window must be >= 1");
  }
  if (stride >= window) {
    throw InvalidBrickConfig("brick config: stride must satisfy 0 <= stride < window");
  }
  if (latent_length < 1) {
    throw InvalidBrickConfig("brick config: latent length must be >= 1");
  }
}

std::size_t offset_for_step(std::size_t stride, std::size_t window,
                            std::size_t step_index) {
  if (window < 1 || stride >= window) {
    throw InvalidBrickConfig("offset_for_step: need 0 <= stride < window");
  }
  // (stride * k) mod f without overflow for any k.
  return (stride % window) * (step_index % window) % window;
}

SegmentPlan build_plan(const BrickConfig& config, std::size_t step_index) {
  config.validate();
  const std::size_t f = config.window;
  const std::size_t length = config.latent_length;

  SegmentPlan plan;
  plan.step_index = step_index;
  plan.offset = offset_for_step(config.stride, f, step_index);

  if (length <= f) {
    plan.segments.push_back({0, length});
    return plan;
  }

  std::size_t cursor = 0;
  if (plan.offset > 0) {
    plan.segments.push_back({0, plan.offset});
    cursor = plan.offset;
  }
  while (cursor + f <= length) {
    plan.segments.push_back({cursor, cursor + f});
    cursor += f;
  }
  if (cursor < length) {
    plan.segments.push_back({cursor, length});
  }
  return plan;
}

ExtensionRule extension_rule(const FrameRange& segment, std::size_t latent_length,
                             std::size_t window) {
  if (segment.length() >= window) {
    throw InvalidBrickConfig("extension_rule: segment is not shorter than the window");
  }
  if (latent_length < window) {
    throw LatentTooShort("extension_rule: latent is shorter than the window");
  }
  if (segment.end > latent_length) {
    throw InvalidBrickConfig("extension_rule: segment exceeds the latent");
  }
  ExtensionRule rule;
  rule.keep = segment;
  if (segment.start == 0) {
    rule.extended = {0, window};
  } else {
    rule.extended = {latent_length - window, latent_length};
  }
  return rule;
}

std::size_t padded_length(std::size_t target_frames, std::size_t window) {
  return target_frames + 2 * window;
}

FrameSequence crop_middle(const FrameSequence& seq, std::size_t target_frames,
                          std::size_t window) {
  if (seq.frames() != padded_length(target_frames, window)) {
    throw LengthMismatch("crop_middle: sequence length is not F + 2f");
  }
  return seq.slice({window, window + target_frames});
}

}  // namespace brickwall
