#include "brickwall/rng.hpp"

#include <cmath>
#include <numbers>

#include "brickwall/errors.hpp"

namespace brickwall {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSplitTag = 0x5851F42D4C957F2DULL;

// SplitMix64 finalizer. Bijective on u64; treated as a random permutation.
std::uint64_t mix(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

double to_unit(std::uint64_t w) {
  // 53 mantissa bits, shifted into (0, 1].
  return static_cast<double>((w >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

std::uint64_t SeededRng::word(std::uint64_t index) const {
  return mix(seed_ + (index + 1) * kGolden);
}

SeededRng SeededRng::split(std::uint64_t key) const {
  return SeededRng(mix(mix(seed_ ^ kSplitTag) + (key + 1) * kGolden));
}

std::uint64_t SeededRng::next_u64() {
  return word(wpos_++);
}

double SeededRng::next_uniform() {
  ++pos_;
  return to_unit(next_u64());
}

double SeededRng::next_normal() {
  const double u1 = to_unit(word(wpos_));
  const double u2 = to_unit(word(wpos_ + 1));
  wpos_ += 2;
  ++pos_;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> sample_standard_normal(SeededRng& rng, std::size_t n) {
  if (n == 0) {
    throw SizeMismatch("sample_standard_normal: n must be >= 1");
  }
  std::vector<double> out(n);
  for (double& x : out) x = rng.next_normal();
  return out;
}

}  // namespace brickwall
