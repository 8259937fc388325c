#include "lopt/chunking.hpp"

#include <algorithm>
#include <stdexcept>

namespace lopt {

SplitResult split(std::u32string_view text, std::size_t chunk_len, std::size_t overlap_len) {
  if (chunk_len == 0) throw std::invalid_argument("split: chunk_len must be >= 1");
  if (overlap_len == 0) throw std::invalid_argument("split: overlap_len must be >= 1");
  SplitResult res;
  res.plan = {chunk_len, overlap_len, 0, text.size()};
  if (text.empty()) return res;
  const std::size_t n = (text.size() + chunk_len - 1) / chunk_len;
  res.plan.n_chunks = n;
  res.chunks.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t start = chunk_len * (i - 1);
    const std::size_t end = std::min(chunk_len * i + overlap_len, text.size());
    res.chunks.push_back({i, start, text.substr(start, end - start)});
  }
  return res;
}

std::size_t default_chunk_len(std::size_t text_len, std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("default_chunk_len: workers must be >= 1");
  return std::max<std::size_t>(1, (text_len + workers - 1) / workers);
}

std::size_t default_overlap_len(std::size_t max_token_char_len) {
  return std::max<std::size_t>(64, 2 * max_token_char_len);
}

DoubledChunkLen double_chunk_len(std::size_t chunk_len, std::size_t text_len) {
  if (chunk_len == 0) throw std::invalid_argument("double_chunk_len: chunk_len must be >= 1");
  DoubledChunkLen d;
  d.at_fixed_point = chunk_len >= text_len;
  d.chunk_len = std::min(2 * chunk_len, std::max<std::size_t>(text_len, 1));
  return d;
}

}  // namespace lopt
