#pragma once

#include <cstdint>
#include <limits>

namespace piranha {

/// xoshiro256** seeded through splitmix64. Streams for parallel shards are
/// derived with the generator's jump function, so stream k never overlaps
/// stream j for any realistic draw count. Normal variates use the polar
/// method on our own uniforms, which keeps sequences identical across
/// standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) noexcept;

  /// Generator for shard `index` of a run seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t index) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  double normal() noexcept;

  /// Advances the state by 2^128 draws.
  void jump() noexcept;

 private:
  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

}  // namespace piranha
