#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace castlab::detail {

// Calls body(i) for i in [0, n) split into contiguous chunks, one per worker.
// body must not throw.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, const Body& body) {
  const std::size_t count = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
  if (count == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t begin = n * w / count;
    const std::size_t end = n * (w + 1) / count;
    pool.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
}

}  // namespace castlab::detail
