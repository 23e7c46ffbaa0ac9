#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <utility>
#include <vector>

namespace scorevote {

// Splits [0, count) into contiguous chunks and evaluates fn(begin, end) on up
// to `jobs` async workers. Chunk results come back in index order, so callers
// reduce deterministically regardless of the worker count.
template <typename R, typename Fn>
std::vector<R> run_chunked(std::size_t count, int jobs, Fn&& fn) {
  std::vector<R> results;
  if (count == 0) return results;
  const std::size_t chunks =
      std::min<std::size_t>(count, static_cast<std::size_t>(jobs < 1 ? 1 : jobs));
  if (chunks <= 1) {
    results.push_back(fn(std::size_t{0}, count));
    return results;
  }
  std::vector<std::future<R>> futures;
  const std::size_t per = count / chunks;
  const std::size_t extra = count % chunks;
  std::size_t begin = 0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t end = begin + per + (c < extra ? 1 : 0);
    futures.push_back(std::async(std::launch::async,
                                 [begin, end, &fn] { return fn(begin, end); }));
    begin = end;
  }
  results.reserve(chunks);
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

}  // namespace scorevote
