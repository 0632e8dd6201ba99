#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace brickwall {

/// Half-open run of frame indices [start, end).
struct FrameRange {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool operator==(const FrameRange&) const = default;
};

/// A latent: `frames` frames by `channels` channels, frame-major storage.
class FrameSequence {
 public:
  FrameSequence(std::size_t frames, std::size_t channels);
  FrameSequence(std::size_t frames, std::size_t channels, std::vector<double> values);

  std::size_t frames() const { return frames_; }
  std::size_t channels() const { return channels_; }

  double& at(std::size_t frame, std::size_t channel) {
    return values_[frame * channels_ + channel];
  }
  double at(std::size_t frame, std::size_t channel) const {
    return values_[frame * channels_ + channel];
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Copy of the frames in [range.start, range.end).
  FrameSequence slice(const FrameRange& range) const;

  /// Write `src` over the frames in `range` (shapes must agree).
  void assign(const FrameRange& range, const FrameSequence& src);

  bool same_shape(const FrameSequence& other) const {
    return frames_ == other.frames_ && channels_ == other.channels_;
  }

 private:
  std::size_t frames_;
  std::size_t channels_;
  std::vector<double> values_;
};

}  // namespace brickwall
