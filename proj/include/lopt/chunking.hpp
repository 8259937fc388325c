#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace lopt {

struct ChunkPlan {
  std::size_t chunk_len = 0;    // stride between chunk starts
  std::size_t overlap_len = 0;  // extra characters appended to each chunk
  std::size_t n_chunks = 0;     // ceil(text_len / chunk_len); 0 only for empty text
  std::size_t text_len = 0;
};

struct Chunk {
  std::size_t index = 0;         // 1-based
  std::size_t global_start = 0;  // chunk_len * (index - 1)
  std::u32string_view text;      // view into the source string; the caller keeps it alive
};

struct SplitResult {
  ChunkPlan plan;
  std::vector<Chunk> chunks;
};

// Overlapping split: chunk i covers [chunk_len*(i-1), min(chunk_len*i + overlap_len, text_len)).
// Adjacent chunks share min(overlap_len, remaining) characters; the union of
// chunks reconstructs the text. Empty text yields zero chunks. Throws
// std::invalid_argument when chunk_len or overlap_len is zero.
SplitResult split(std::u32string_view text, std::size_t chunk_len, std::size_t overlap_len);

// max(1, ceil(text_len / workers))
std::size_t default_chunk_len(std::size_t text_len, std::size_t workers);

// max(64, 2 * max_token_char_len): comfortably longer than any single token,
// so overlap windows can hold full match runs.
std::size_t default_overlap_len(std::size_t max_token_char_len);

struct DoubledChunkLen {
  std::size_t chunk_len = 0;  // min(2 * previous, text_len)
  bool at_fixed_point = false;  // previous was already text_len; stop doubling
};
DoubledChunkLen double_chunk_len(std::size_t chunk_len, std::size_t text_len);

}  // namespace lopt
