#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace brickwall {

/// Counter-based deterministic random stream. The i-th word of a stream is a
/// pure function of (seed, i), so draws are bit-identical across runs and
/// thread counts as long as each task owns its own stream. Parallel code must
/// derive disjoint child streams with split(), never share one instance.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed) {}

  /// Child stream keyed on an integer; the parent is not advanced. Distinct
  /// keys give statistically independent streams.
  SeededRng split(std::uint64_t key) const;

  /// One standard normal draw (Box-Muller, cosine branch). Consumes exactly
  /// two words, so draw n is a pure function of (seed, position).
  double next_normal();

  /// Uniform draw in (0, 1]; consumes one word.
  double next_uniform();

  std::uint64_t next_u64();

  /// Number of normal/uniform variates drawn so far (stream position).
  std::uint64_t position() const { return pos_; }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t word(std::uint64_t index) const;

  std::uint64_t seed_;
  std::uint64_t pos_ = 0;   // variates drawn
  std::uint64_t wpos_ = 0;  // words consumed
};

/// n i.i.d. standard normal draws; advances the stream by exactly n draws.
std::vector<double> sample_standard_normal(SeededRng& rng, std::size_t n);

}  // namespace brickwall
