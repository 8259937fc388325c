#include "lopt/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "lopt/chunking.hpp"

namespace lopt {

char32_t delimiter_char(Delimiter d) {
  switch (d) {
    case Delimiter::whitespace:
      return U' ';
    case Delimiter::comma:
      return U',';
    case Delimiter::period:
      return U'.';
  }
  throw std::logic_error("delimiter_char: bad enum value");
}

std::vector<DelimiterChunk> delimiter_split(std::u32string_view text,
                                            const DelimiterConfig& config) {
  if (config.target_chunk_len == 0)
    throw std::invalid_argument("delimiter_split: target_chunk_len must be >= 1");
  std::vector<DelimiterChunk> chunks;
  if (text.empty()) return chunks;

  const char32_t delim = delimiter_char(config.delimiter);
  const std::size_t target = config.target_chunk_len;
  std::vector<std::size_t> cuts;
  std::size_t k = 1;
  std::size_t prev = 0;  // last cut; the next cut must land strictly after it
  while (k * target < text.size()) {
    std::size_t p = std::max(k * target, prev + 1);
    while (p < text.size() && text[p] != delim) ++p;
    if (p >= text.size()) break;
    cuts.push_back(p);
    prev = p;
    k = p / target + 1;
  }

  std::size_t start = 0;
  for (const std::size_t cut : cuts) {
    chunks.push_back({start, text.substr(start, cut - start)});
    start = cut;
  }
  chunks.push_back({start, text.substr(start)});
  return chunks;
}

std::vector<TokenSpan> delimiter_tokenize_parallel(std::u32string_view text,
                                                   const Tokenizer& tokenizer,
                                                   const DelimiterConfig& config,
                                                   const WorkerPoolConfig& pool) {
  const std::vector<DelimiterChunk> dchunks = delimiter_split(text, config);
  std::vector<Chunk> chunks;
  chunks.reserve(dchunks.size());
  for (std::size_t i = 0; i < dchunks.size(); ++i)
    chunks.push_back({i + 1, dchunks[i].global_start, dchunks[i].text});
  const std::vector<ChunkResult> results = tokenize_chunks_parallel(chunks, tokenizer, pool);

  std::vector<TokenSpan> out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const std::size_t gs = dchunks[i].global_start;
    for (const TokenSpan& t : results[i].tokens) out.push_back({t.id, t.start + gs, t.end + gs});
  }
  return out;
}

namespace {

struct IdRun {
  std::size_t a = 0, b = 0, len = 0;
};

// Longest common contiguous run between two id sequences; equal lengths
// resolve to the rightmost position in a, then in b. O(|a|*|b|) suffix DP
// over the (small) boundary windows.
IdRun longest_common_run(const std::vector<TokenId>& a, const std::vector<TokenId>& b) {
  IdRun best;
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = (a[i - 1] == b[j - 1]) ? prev[j - 1] + 1 : 0;
      if (cur[j] > 0 && cur[j] >= best.len) best = {i - cur[j], j - cur[j], cur[j]};
    }
    std::swap(prev, cur);
  }
  return best;
}

// Merge two id lists through the common run found in the tail/head windows.
std::vector<TokenId> merge_ids(const std::vector<TokenId>& left, const std::vector<TokenId>& right,
                               std::size_t window) {
  const std::size_t lw = std::min(window, left.size());
  const std::size_t rw = std::min(window, right.size());
  const std::vector<TokenId> tail(left.end() - static_cast<std::ptrdiff_t>(lw), left.end());
  const std::vector<TokenId> head(right.begin(), right.begin() + static_cast<std::ptrdiff_t>(rw));
  const IdRun run = longest_common_run(tail, head);

  std::vector<TokenId> out;
  out.reserve(left.size() + right.size());
  if (run.len == 0) {  // no common run: naive concatenation
    out = left;
    out.insert(out.end(), right.begin(), right.end());
    return out;
  }
  const std::size_t keep_left = left.size() - lw + run.a + run.len;
  out.assign(left.begin(), left.begin() + static_cast<std::ptrdiff_t>(keep_left));
  out.insert(out.end(), right.begin() + static_cast<std::ptrdiff_t>(run.b + run.len), right.end());
  return out;
}

std::vector<TokenId> ids_of(const std::vector<TokenSpan>& tokens) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const TokenSpan& t : tokens) ids.push_back(t.id);
  return ids;
}

// Auto window: however many tokens overlap an overlap_len-character region on
// either side, plus slack for tokens cut at the region edge.
std::size_t auto_window(std::size_t left_in_region, std::size_t right_in_region) {
  return std::max(left_in_region, right_in_region) + 8;
}

}  // namespace

std::vector<TokenId> lcs_overlap_merge(const std::vector<TokenSpan>& left,
                                       const std::vector<TokenSpan>& right,
                                       const LcsConfig& config) {
  std::size_t window = config.window;
  if (window == 0) {
    std::size_t cl = 0, cr = 0;
    if (!left.empty()) {
      const std::size_t tail0 =
          left.back().end > config.overlap_len ? left.back().end - config.overlap_len : 0;
      for (auto it = left.rbegin(); it != left.rend() && it->end > tail0; ++it) ++cl;
    }
    if (!right.empty()) {
      const std::size_t head1 = right.front().start + config.overlap_len;
      for (const TokenSpan& t : right) {
        if (t.start >= head1) break;
        ++cr;
      }
    }
    window = auto_window(cl, cr);
  }
  return merge_ids(ids_of(left), ids_of(right), window);
}

std::vector<TokenId> lcs_tokenize_parallel(std::u32string_view text, const Tokenizer& tokenizer,
                                           std::size_t chunk_len, const LcsConfig& config,
                                           const WorkerPoolConfig& pool) {
  if (config.overlap_len == 0)
    throw std::invalid_argument("lcs_tokenize_parallel: overlap_len must be >= 1");
  if (text.empty()) return {};

  const SplitResult sr = split(text, chunk_len, config.overlap_len);
  const std::vector<ChunkResult> results = tokenize_chunks_parallel(sr.chunks, tokenizer, pool);

  std::vector<TokenId> merged;
  for (std::size_t c = 0; c < results.size(); ++c) {
    std::vector<TokenId> ids = ids_of(results[c].tokens);
    if (c == 0) {
      merged = std::move(ids);
      continue;
    }
    std::size_t window = config.window;
    if (window == 0) {
      // Count tokens inside the overlap region on each side of this boundary:
      // left locally [chunk_len, left chunk end), right locally [0, overlap).
      const std::vector<TokenSpan>& lt = results[c - 1].tokens;
      const std::vector<TokenSpan>& rt = results[c].tokens;
      const std::size_t region = results[c - 1].chunk_len - sr.plan.chunk_len;
      std::size_t cl = 0, cr = 0;
      for (auto it = lt.rbegin(); it != lt.rend() && it->end > sr.plan.chunk_len; ++it) ++cl;
      for (const TokenSpan& t : rt) {
        if (t.start >= region) break;
        ++cr;
      }
      window = auto_window(cl, cr);
    }
    merged = merge_ids(merged, ids, window);
  }
  return merged;
}

}  // namespace lopt
