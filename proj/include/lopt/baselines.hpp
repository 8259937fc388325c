#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "lopt/parallel.hpp"
#include "lopt/token.hpp"
#include "lopt/tokenizer.hpp"

namespace lopt {

enum class Delimiter { whitespace, comma, period };
char32_t delimiter_char(Delimiter d);

struct DelimiterConfig {
  Delimiter delimiter = Delimiter::whitespace;
  std::size_t target_chunk_len = 0;  // must be >= 1
};

struct DelimiterChunk {
  std::size_t global_start = 0;
  std::u32string_view text;
};

// Non-overlapping split at the first delimiter occurrence at or after each
// multiple of target_chunk_len; the delimiter character starts the next chunk.
// When no delimiter exists past a multiple, the remainder stays one chunk.
// Chunks concatenate back to the input. Throws std::invalid_argument when
// target_chunk_len is zero.
std::vector<DelimiterChunk> delimiter_split(std::u32string_view text,
                                            const DelimiterConfig& config);

// Tokenizes the delimiter chunks in parallel and naively concatenates, spans
// rebased to global coordinates. For BPE this is exact iff no
// sequential-oracle token straddles a split point; for WordPiece a mid-word
// cut additionally resets continuation-prefix state, so only the straddle ->
// inexact direction holds.
std::vector<TokenSpan> delimiter_tokenize_parallel(std::u32string_view text,
                                                   const Tokenizer& tokenizer,
                                                   const DelimiterConfig& config,
                                                   const WorkerPoolConfig& pool);

struct LcsConfig {
  std::size_t overlap_len = 0;  // overlap of the underlying overlapping split; >= 1
  // Tokens searched on each side of a boundary. 0 = auto: the number of
  // tokens overlapping the overlap_len character region plus 8 of slack.
  std::size_t window = 0;
};

// Prior-art style id-only merge: the longest common contiguous run of token
// ids between the left list's tail window and the right list's head window,
// character positions ignored. The merge keeps the left side through the run
// and the right side after it; with no common run at all the lists are
// naively concatenated. Periodic id sequences routinely fool this -- which is
// the point of carrying it as a baseline.
std::vector<TokenId> lcs_overlap_merge(const std::vector<TokenSpan>& left,
                                       const std::vector<TokenSpan>& right,
                                       const LcsConfig& config);

// Overlapping split + parallel tokenize + left-to-right lcs_overlap_merge
// fold across boundaries. Returns ids only.
std::vector<TokenId> lcs_tokenize_parallel(std::u32string_view text, const Tokenizer& tokenizer,
                                           std::size_t chunk_len, const LcsConfig& config,
                                           const WorkerPoolConfig& pool);

}  // namespace lopt
