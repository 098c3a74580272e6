#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace blasso {

/// Seedable random stream built on xoshiro256++ (seeded through SplitMix64).
///
/// Every chain gets its own stream via for_stream(seed, k), which applies k
/// jumps of 2^128 steps, so chains never overlap and draws are reproducible
/// across platforms: all conversions to floating point are done here rather
/// than through the implementation-defined <random> distributions.
///
/// A stream is a single-owner object: move it between threads freely, never
/// share one concurrently.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed);

  static RngStream for_stream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;
  result_type operator()() noexcept { return next_u64(); }
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on the open interval (0, 1).
  double uniform_open() noexcept;
  /// Standard normal (Marsaglia polar method).
  double normal() noexcept;
  /// Standard exponential.
  double exponential() noexcept;

  /// Advance the state by 2^128 draws.
  void jump() noexcept;

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace blasso
