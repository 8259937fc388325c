#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "lopt/chunking.hpp"
#include "lopt/token.hpp"
#include "lopt/tokenizer.hpp"

namespace lopt {

struct WorkerPoolConfig {
  std::size_t pool_size = 32;  // worker threads; chunks are dispatched FIFO
};

struct ChunkResult {
  std::size_t chunk_index = 0;    // 1-based, mirrors Chunk::index
  std::size_t chunk_len = 0;      // code points in the chunk's text
  std::vector<TokenSpan> tokens;  // chunk-local spans
};

// Applies fn to every chunk across min(pool_size, n) worker threads, FIFO by
// chunk index. Results come back ordered by chunk_index. The first worker
// exception aborts the batch and is rethrown as std::runtime_error naming the
// chunk index.
std::vector<ChunkResult> map_chunks_parallel(
    const std::vector<Chunk>& chunks,
    const std::function<std::vector<TokenSpan>(const Chunk&)>& fn, const WorkerPoolConfig& pool);

// map_chunks_parallel with fn = tokenizer.tokenize: per-chunk output is
// bit-identical to sequentially tokenizing that chunk's text, whatever the
// pool size.
std::vector<ChunkResult> tokenize_chunks_parallel(const std::vector<Chunk>& chunks,
                                                  const Tokenizer& tokenizer,
                                                  const WorkerPoolConfig& pool);

}  // namespace lopt
