#include "castlab/rng.hpp"

#include "castlab/error.hpp"

namespace castlab {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorKind::ZeroBound, "rand_below needs bound >= 1");
  // 2^64 mod bound; draws below it are the biased remainder and get rejected.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace castlab
