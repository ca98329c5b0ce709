#include "skewdiff/rng.hpp"

#include <cmath>
#include <numbers>

namespace skewdiff {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t product = std::uint64_t{a} * std::uint64_t{b};
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

inline double to_open_unit(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

inline std::array<double, 2> box_muller(double u1, double u2) {
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index)
    : seed_(seed), index_(index) {}

std::array<std::uint32_t, 4> RandomStream::block(std::uint64_t position) const {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(position),
      static_cast<std::uint32_t>(position >> 32),
      static_cast<std::uint32_t>(index_),
      static_cast<std::uint32_t>(index_ >> 32)};
  const std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  return philox4x32_10(ctr, key);
}

RandomStream::result_type RandomStream::operator()() {
  if (used_ + 2 > 4) {
    buffer_ = block(position_++);
    used_ = 0;
  }
  const std::uint64_t lo = buffer_[used_];
  const std::uint64_t hi = buffer_[used_ + 1];
  used_ += 2;
  return (hi << 32) | lo;
}

double RandomStream::uniform() { return to_open_unit((*this)()); }

double RandomStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const auto pair = box_muller(u1, u2);
  spare_ = pair[1];
  has_spare_ = true;
  return pair[0];
}

std::array<double, 2> RandomStream::normal_pair_at(std::uint64_t position) const {
  // Addressed blocks live in the top half of the position space so they never
  // collide with the sequential cursor.
  const auto words = block(position | (std::uint64_t{1} << 63));
  const std::uint64_t a = (std::uint64_t{words[1]} << 32) | words[0];
  const std::uint64_t b = (std::uint64_t{words[3]} << 32) | words[2];
  return box_muller(to_open_unit(a), to_open_unit(b));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RandomStream derive_stream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(seed, index);
}

RandomStream path_stream(std::uint64_t seed, std::uint64_t path, unsigned lane) {
  return RandomStream(seed, (path << 8) | (lane & 0xFFu));
}

}  // namespace skewdiff
