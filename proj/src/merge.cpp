#include "lopt/merge.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace lopt {

namespace {

// Index range [first, last) of tokens lying fully inside the global window
// [w0, w1). Spans are sorted and non-overlapping, so the range is contiguous.
std::pair<std::size_t, std::size_t> candidates_in_window(const std::vector<TokenSpan>& tokens,
                                                         std::size_t chunk_global_start,
                                                         std::size_t w0, std::size_t w1) {
  const auto begin = std::lower_bound(
      tokens.begin(), tokens.end(), w0,
      [chunk_global_start](const TokenSpan& t, std::size_t v) {
        return t.start + chunk_global_start < v;
      });
  std::size_t first = static_cast<std::size_t>(begin - tokens.begin());
  std::size_t last = first;
  while (last < tokens.size() && tokens[last].end + chunk_global_start <= w1) ++last;
  return {first, last};
}

}  // namespace

MatchResult match_overlap(const ChunkResult& left, const ChunkResult& right,
                          std::size_t left_start, std::size_t right_start,
                          const MergeConfig& config) {
  if (right_start <= left_start || right_start >= left_start + left.chunk_len)
    throw std::logic_error("match_overlap: chunks do not overlap (right_start " +
                           std::to_string(right_start) + " outside left chunk [" +
                           std::to_string(left_start) + ", " +
                           std::to_string(left_start + left.chunk_len) + "))");

  const std::size_t w0 = right_start;
  const std::size_t w1 = left_start + left.chunk_len;
  const auto [li, ln] = candidates_in_window(left.tokens, left_start, w0, w1);
  const auto [rj, rn] = candidates_in_window(right.tokens, right_start, w0, w1);

  // Two-pointer sweep over the candidate ranges. Spans in each list are sorted
  // and non-overlapping, so at most one token per list starts at any position
  // and every aligned pair is visited in order.
  std::size_t best_l = 0, best_r = 0, best_n = 0;
  std::size_t run_l = 0, run_r = 0, run_n = 0;
  std::size_t prev_i = 0, prev_j = 0;  // valid only while run_n > 0
  std::size_t i = li, j = rj;
  while (i < ln && j < rn) {
    const TokenSpan& a = left.tokens[i];
    const TokenSpan& b = right.tokens[j];
    const std::size_t as = a.start + left_start, ae = a.end + left_start;
    const std::size_t bs = b.start + right_start, be = b.end + right_start;
    if (as == bs && ae == be && a.id == b.id) {
      if (run_n > 0 && prev_i + 1 == i && prev_j + 1 == j) {
        ++run_n;
      } else {
        run_l = i;
        run_r = j;
        run_n = 1;
      }
      prev_i = i;
      prev_j = j;
      if (run_n >= best_n) {  // >= : equal-length runs resolve to the rightmost
        best_l = run_l;
        best_r = run_r;
        best_n = run_n;
      }
      ++i;
      ++j;
    } else if (as < bs) {
      ++i;
    } else if (bs < as) {
      ++j;
    } else if (ae < be) {  // same start: the earlier-ending token can't match anything later
      ++i;
    } else if (be < ae) {
      ++j;
    } else {  // same span, different id
      ++i;
      ++j;
    }
  }

  MatchResult m;
  if (best_n == 0 || best_n < config.min_overlap_tokens) return m;
  if (config.strict_min_chars) {
    const std::size_t run_chars =
        left.tokens[best_l + best_n - 1].end - left.tokens[best_l].start;
    if (run_chars <= config.max_token_char_len) return m;
  }
  m.l = best_l;
  m.r = best_r;
  m.n_o = best_n;
  return m;
}

std::vector<TokenSpan> merge_all(const std::vector<ChunkResult>& results,
                                 const std::vector<MatchResult>& matches, const ChunkPlan& plan) {
  if (results.empty()) return {};
  if (matches.size() + 1 != results.size())
    throw std::invalid_argument("merge_all: need exactly one match per boundary (" +
                                std::to_string(results.size() - 1) + " boundaries, " +
                                std::to_string(matches.size()) + " matches)");
  for (std::size_t b = 0; b < matches.size(); ++b)
    if (matches[b].n_o == 0)
      throw std::invalid_argument("merge_all: boundary " + std::to_string(b + 1) +
                                  " has no overlap match; merge refused");

  std::vector<TokenSpan> out;
  for (std::size_t c = 0; c < results.size(); ++c) {
    const std::vector<TokenSpan>& toks = results[c].tokens;
    const std::size_t gs = plan.chunk_len * (results[c].chunk_index - 1);
    std::size_t from = (c == 0) ? 0 : matches[c - 1].r + matches[c - 1].n_o;
    std::size_t to = (c + 1 < results.size()) ? matches[c].l + matches[c].n_o : toks.size();
    from = std::min(from, toks.size());
    to = std::min(to, toks.size());
    for (std::size_t k = from; k < to; ++k)
      out.push_back({toks[k].id, toks[k].start + gs, toks[k].end + gs});
  }
  return out;
}

LoptOutput lopt_tokenize(std::u32string_view text, const Tokenizer& tokenizer,
                         const LoptParams& params, const WorkerPoolConfig& pool,
                         const MergeConfig& merge_config) {
  LoptOutput out;
  if (text.empty()) return out;

  MergeConfig mcfg = merge_config;
  if (mcfg.strict_min_chars && mcfg.max_token_char_len == 0)
    mcfg.max_token_char_len = tokenizer.vocab().max_token_char_len();

  const std::size_t overlap_len =
      params.overlap_len ? params.overlap_len
                         : default_overlap_len(tokenizer.vocab().max_token_char_len());
  std::size_t chunk_len = params.chunk_len
                              ? params.chunk_len
                              : default_chunk_len(text.size(), pool.pool_size);

  for (std::size_t attempt = 0;; ++attempt) {
    if (chunk_len >= text.size()) {
      // One chunk covers the text: the pipeline degenerates to sequential
      // tokenization and is trivially lossless.
      out.tokens = tokenizer.tokenize(text);
      out.stats.final_chunk_len = chunk_len;
      return out;
    }

    const SplitResult sr = split(text, chunk_len, overlap_len);
    const std::vector<ChunkResult> results = tokenize_chunks_parallel(sr.chunks, tokenizer, pool);

    std::vector<MatchResult> matches;
    matches.reserve(results.size() - 1);
    bool ok = true;
    for (std::size_t b = 0; ok && b + 1 < results.size(); ++b) {
      const MatchResult m = match_overlap(results[b], results[b + 1], chunk_len * b,
                                          chunk_len * (b + 1), mcfg);
      if (m.n_o == 0) {
        ok = false;
        break;
      }
      // With overlap_len > chunk_len a chunk can take part in several
      // boundaries; its incoming and outgoing runs must not cross, or the
      // middle slice [r+n, l+n) is ill-formed.
      if (b > 0) {
        const MatchResult& prev = matches[b - 1];
        if (prev.r + prev.n_o > m.l + m.n_o) {
          ok = false;
          break;
        }
      }
      matches.push_back(m);
    }

    if (ok) {
      out.tokens = merge_all(results, matches, sr.plan);
      out.stats.final_chunk_len = chunk_len;
      out.stats.boundary_overlaps.reserve(matches.size());
      for (const MatchResult& m : matches) out.stats.boundary_overlaps.push_back(m.n_o);
      return out;
    }

    if (attempt >= mcfg.max_doublings) {
      out.stats.final_chunk_len = chunk_len;
      if (mcfg.sequential_fallback) {
        out.stats.fell_back = true;
        out.tokens = tokenizer.tokenize(text);
      } else {
        out.stats.match_failed = true;
      }
      return out;
    }
    chunk_len = double_chunk_len(chunk_len, text.size()).chunk_len;
    ++out.stats.doublings;
  }
}

}  // namespace lopt
