#pragma once

#include <cstdint>
#include <limits>

namespace castlab {

// SplitMix64. Used for experiment sampling only, never for key material.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; throws Error(ZeroBound) for 0.
  std::uint64_t below(std::uint64_t bound);

  constexpr std::uint64_t state() const noexcept { return state_; }

  // UniformRandomBitGenerator
  constexpr std::uint64_t operator()() noexcept { return next_u64(); }
  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept {
    return std::numeric_limits<std::uint64_t>::max();
  }

  friend constexpr bool operator==(const SplitMix64&, const SplitMix64&) = default;

 private:
  std::uint64_t state_;
};

// Independent stream for one trial. Parallel experiments draw trial i from
// stream i, which makes their results independent of the worker count.
constexpr SplitMix64 derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept {
  SplitMix64 mixer(master_seed ^ (stream_id * 0x9E3779B97F4A7C15ull));
  return SplitMix64(mixer.next_u64());
}

}  // namespace castlab
