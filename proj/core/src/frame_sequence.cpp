#include "brickwall/frame_sequence.hpp"

#include <algorithm>

#include "brickwall/errors.hpp"

namespace brickwall {

FrameSequence::FrameSequence(std::size_t frames, std::size_t channels)
    : frames_(frames), channels_(channels), values_(frames * channels, 0.0) {
  if (frames == 0 || channels == 0) {
    throw ShapeMismatch("FrameSequence: frames and channels must be >= 1");
  }
}

FrameSequence::FrameSequence(std::size_t frames, std::size_t channels,
                             std::vector<double> values)
    : frames_(frames), channels_(channels), values_(std::move(values)) {
  if (frames == 0 || channels == 0 || values_.size() != frames * channels) {
    throw ShapeMismatch("FrameSequence: value count must equal frames * channels");
  }
}

FrameSequence FrameSequence::slice(const FrameRange& range) const {
  if (range.start >= range.end || range.end > frames_) {
    throw ShapeMismatch("FrameSequence::slice: range out of bounds");
  }
  FrameSequence out(range.length(), channels_);
  std::copy(values_.begin() + static_cast<std::ptrdiff_t>(range.start * channels_),
            values_.begin() + static_cast<std::ptrdiff_t>(range.end * channels_),
            out.values_.begin());
  return out;
}

void FrameSequence::assign(const FrameRange& range, const FrameSequence& src) {
  if (range.end > frames_ || range.length() != src.frames() ||
      src.channels() != channels_) {
    throw ShapeMismatch("FrameSequence::assign: range/shape mismatch");
  }
  std::copy(src.values_.begin(), src.values_.end(),
            values_.begin() + static_cast<std::ptrdiff_t>(range.start * channels_));
}

}  // namespace brickwall
