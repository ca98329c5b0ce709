#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace skewdiff {

/// Counter-based random stream (Philox4x32-10).
///
/// The 64-bit seed is the Philox key. The substream index occupies the upper
/// half of the 128-bit counter and the block position the lower half, so two
/// streams with different indices never share a counter value. Copying a
/// stream copies its position; a copy replays the same sequence.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  /// Standard normal via Box-Muller; pairs are cached.
  double normal();

  /// Two standard normals computed from one counter block without touching
  /// the sequential position. Used where noise must be addressable by step.
  std::array<double, 2> normal_pair_at(std::uint64_t block) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t index() const { return index_; }

  friend bool operator==(const RandomStream&, const RandomStream&) = default;

 private:
  std::array<std::uint32_t, 4> block(std::uint64_t position) const;

  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t position_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  unsigned used_ = 4;  // 32-bit words consumed from buffer_
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// SplitMix64 finalizer of (seed, salt); used to give sub-experiments their
/// own base seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

RandomStream derive_stream(std::uint64_t seed, std::uint64_t index);

/// Substream for one Monte Carlo path. Each path owns up to 256 lanes
/// (driving noise, auxiliary noise, ...).
RandomStream path_stream(std::uint64_t seed, std::uint64_t path,
                         unsigned lane = 0);

}  // namespace skewdiff
