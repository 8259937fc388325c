#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "lopt/chunking.hpp"
#include "lopt/parallel.hpp"
#include "lopt/token.hpp"
#include "lopt/tokenizer.hpp"

namespace lopt {

struct MatchResult {
  std::size_t l = 0;    // index into the left chunk's token list of the first run token
  std::size_t r = 0;    // index into the right chunk's token list of the first run token
  std::size_t n_o = 0;  // run length in tokens; 0 means no acceptable match
};

struct MergeConfig {
  std::size_t min_overlap_tokens = 2;
  // Require the matched run's character length to exceed max_token_char_len;
  // runs that long provably pin the merged output to the sequential result.
  bool strict_min_chars = false;
  std::size_t max_token_char_len = 0;  // strict_min_chars threshold; 0 = take from the vocabulary
  std::size_t max_doublings = 4;
  // After max_doublings failed passes, retokenize sequentially. With this off,
  // a failed boundary is reported via LoptStats::match_failed and no tokens
  // are produced -- never a silently wrong output.
  bool sequential_fallback = true;
};

// Longest contiguous run of token pairs with equal global spans and equal ids,
// considering only tokens lying fully inside the overlap window
// [right_start, left_start + left.chunk_len). Equal-length runs resolve to the
// rightmost. Runs shorter than min_overlap_tokens, or failing the strict
// character check, come back as n_o = 0. Throws std::logic_error when the
// chunks do not overlap (right_start not inside the left chunk).
MatchResult match_overlap(const ChunkResult& left, const ChunkResult& right,
                          std::size_t left_start, std::size_t right_start,
                          const MergeConfig& config);

// Position-aware concatenation through the matched runs: chunk 1 contributes
// tokens [0, l_1+n_1), chunk i in the middle [r_{i-1}+n_{i-1}, l_i+n_i), chunk
// N [r_{N-1}+n_{N-1}, end), every span rebased by its chunk's global start.
// Requires matches.size() == results.size()-1 and every n_o >= 1; a failed
// match refuses the merge (std::invalid_argument).
std::vector<TokenSpan> merge_all(const std::vector<ChunkResult>& results,
                                 const std::vector<MatchResult>& matches, const ChunkPlan& plan);

struct LoptStats {
  std::size_t doublings = 0;
  bool fell_back = false;     // sequential fallback taken after max_doublings
  bool match_failed = false;  // fallback disabled and a boundary still failed
  std::size_t final_chunk_len = 0;
  std::vector<std::size_t> boundary_overlaps;  // n_o per boundary of the final pass
};

struct LoptOutput {
  std::vector<TokenSpan> tokens;  // global spans
  LoptStats stats;
};

struct LoptParams {
  std::size_t chunk_len = 0;    // 0 = default_chunk_len(text_len, pool_size)
  std::size_t overlap_len = 0;  // 0 = default_overlap_len(vocab max token len)
};

// Split -> tokenize chunks in parallel -> match every boundary -> merge. Any
// failed boundary doubles chunk_len and restarts the whole pass; doubling
// tops out at one chunk covering the text (trivially equal to sequential
// tokenization), and max_doublings bounds the retries before the sequential
// fallback, so the output never silently diverges from tokenize(text).
LoptOutput lopt_tokenize(std::u32string_view text, const Tokenizer& tokenizer,
                         const LoptParams& params, const WorkerPoolConfig& pool,
                         const MergeConfig& merge_config);

}  // namespace lopt
