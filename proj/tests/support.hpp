#pragma once
// Shared test helpers: fixture tokenizers mirroring the files in data/,
// independent oracles written straight from the algorithm definitions (no
// code shared with the library paths they check), and deterministic random
// generators (std::mt19937 with modulo draws, so every platform sees the
// same sequences).

#include <climits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lopt/merge.hpp"
#include "lopt/parallel.hpp"
#include "lopt/token.hpp"
#include "lopt/tokenizer.hpp"
#include "lopt/unicode.hpp"
#include "lopt/vocab.hpp"

namespace sup {

using lopt::ChunkResult;
using lopt::MatchResult;
using lopt::MergeConfig;
using lopt::MergeTable;
using lopt::TokenId;
using lopt::Tokenizer;
using lopt::TokenizerConfig;
using lopt::TokenSpan;
using lopt::Vocabulary;

inline std::size_t pick(std::mt19937& rng, std::size_t n) { return n == 0 ? 0 : rng() % n; }

// ---------------------------------------------------------------- fixtures

// Mirrors data/toybpe_vocab.json + data/toybpe_merges.txt:
// a..j -> 0..9, ab=10, abc=11, de=12, [UNK]=13; merges (a,b) (ab,c) (d,e).
inline Tokenizer make_toybpe(TokenizerConfig cfg = TokenizerConfig::bpe_defaults()) {
  std::vector<std::pair<std::u32string, TokenId>> entries;
  const std::u32string chars = U"abcdefghij";
  for (std::size_t i = 0; i < chars.size(); ++i)
    entries.emplace_back(std::u32string(1, chars[i]), static_cast<TokenId>(i));
  entries.emplace_back(U"ab", 10);
  entries.emplace_back(U"abc", 11);
  entries.emplace_back(U"de", 12);
  entries.emplace_back(U"[UNK]", 13);
  MergeTable merges;
  merges.add(U"a", U"b", 0);
  merges.add(U"ab", U"c", 1);
  merges.add(U"d", U"e", 2);
  return Tokenizer(Vocabulary(std::move(entries), U"[UNK]"), std::move(merges), cfg);
}

// Mirrors data/toywp_vocab.txt: [UNK]=0, un=1, ##aff=2, ##able=3, a=4.
inline Tokenizer make_toywp(TokenizerConfig cfg = TokenizerConfig::wordpiece_defaults()) {
  std::vector<std::pair<std::u32string, TokenId>> entries = {
      {U"[UNK]", 0}, {U"un", 1}, {U"##aff", 2}, {U"##able", 3}, {U"a", 4}};
  return Tokenizer(Vocabulary(std::move(entries), U"[UNK]", U"##"), cfg);
}

// Mirrors data/demo_vocab.json + data/demo_merges.txt. The "abc," and "abc."
// entries merge across punctuation, so delimiter splits at , or . sever them.
inline Tokenizer make_demo_bpe(TokenizerConfig cfg = TokenizerConfig::bpe_defaults()) {
  std::vector<std::pair<std::u32string, TokenId>> entries;
  const std::u32string chars = U"abcdefghij";
  for (std::size_t i = 0; i < chars.size(); ++i)
    entries.emplace_back(std::u32string(1, chars[i]), static_cast<TokenId>(i));
  entries.emplace_back(U",", 10);
  entries.emplace_back(U".", 11);
  entries.emplace_back(U"ab", 12);
  entries.emplace_back(U"abc", 13);
  entries.emplace_back(U"de", 14);
  entries.emplace_back(U"abc,", 15);
  entries.emplace_back(U"abc.", 16);
  entries.emplace_back(U"fg", 17);
  entries.emplace_back(U"hi", 18);
  entries.emplace_back(U"hij", 19);
  entries.emplace_back(U"[UNK]", 20);
  MergeTable merges;
  merges.add(U"a", U"b", 0);
  merges.add(U"ab", U"c", 1);
  merges.add(U"d", U"e", 2);
  merges.add(U"abc", U",", 3);
  merges.add(U"abc", U".", 4);
  merges.add(U"f", U"g", 5);
  merges.add(U"h", U"i", 6);
  merges.add(U"hi", U"j", 7);
  return Tokenizer(Vocabulary(std::move(entries), U"[UNK]"), std::move(merges), cfg);
}

// ------------------------------------------------------ independent oracles

// Brute-force BPE merge loop on one pre-token: split to characters, then
// repeatedly scan every adjacent pair for the lowest rank and rebuild the
// piece list merging all occurrences of that pair left to right.
inline std::vector<std::u32string> bpe_word_pieces_oracle(std::u32string_view word,
                                                          const MergeTable& merges) {
  std::vector<std::u32string> pieces;
  pieces.reserve(word.size());
  for (const char32_t c : word) pieces.emplace_back(1, c);
  while (pieces.size() > 1) {
    int best = INT_MAX;
    std::u32string best_l, best_r;
    for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
      const auto rank = merges.rank_of(pieces[j], pieces[j + 1]);
      if (rank && *rank < best) {
        best = *rank;
        best_l = pieces[j];
        best_r = pieces[j + 1];
      }
    }
    if (best == INT_MAX) break;
    std::vector<std::u32string> next;
    next.reserve(pieces.size());
    std::size_t j = 0;
    while (j < pieces.size()) {
      if (j + 1 < pieces.size() && pieces[j] == best_l && pieces[j + 1] == best_r) {
        next.push_back(best_l + best_r);
        j += 2;
      } else {
        next.push_back(pieces[j]);
        j += 1;
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

// Full-text BPE oracle: pre-tokenization and lowercasing reuse the library's
// (small, separately tested) helpers; the merge order and unk mapping -- the
// substance under test -- are recomputed independently above.
inline std::vector<TokenSpan> bpe_oracle(std::u32string_view text, const Tokenizer& tok) {
  const TokenizerConfig& cfg = tok.config();
  std::u32string lowered;
  std::u32string_view working = text;
  if (cfg.lowercase) {
    lowered = lopt::to_lower(text);
    working = lowered;
  }
  std::vector<TokenSpan> out;
  for (const lopt::PreToken& w : lopt::pretokenize(working, cfg)) {
    std::size_t off = w.start;
    for (const std::u32string& p : bpe_word_pieces_oracle(w.text, tok.merges())) {
      if (const auto id = tok.vocab().find(p)) {
        out.push_back({*id, off, off + p.size()});
      } else if (cfg.byte_fallback) {
        for (std::size_t k = 0; k < p.size(); ++k)
          out.push_back({tok.vocab().unk_id(), off + k, off + k + 1});
      } else {
        out.push_back({tok.vocab().unk_id(), off, off + p.size()});
      }
      off += p.size();
    }
  }
  return out;
}

// Quadratic overlap-match oracle: enumerate every aligned (span, id) pair of
// window candidates, extend each run start to its maximal length, keep the
// longest run with rightmost tie-break, then apply the thresholds.
inline MatchResult match_oracle(const ChunkResult& left, const ChunkResult& right,
                                std::size_t left_start, std::size_t right_start,
                                const MergeConfig& cfg) {
  const std::size_t w0 = right_start;
  const std::size_t w1 = left_start + left.chunk_len;
  const auto inside = [&](const TokenSpan& t, std::size_t gs) {
    return t.start + gs >= w0 && t.end + gs <= w1;
  };
  const auto match_at = [&](std::size_t i, std::size_t j) {
    if (i >= left.tokens.size() || j >= right.tokens.size()) return false;
    const TokenSpan& a = left.tokens[i];
    const TokenSpan& b = right.tokens[j];
    if (!inside(a, left_start) || !inside(b, right_start)) return false;
    return a.start + left_start == b.start + right_start &&
           a.end + left_start == b.end + right_start && a.id == b.id;
  };

  std::size_t bl = 0, br = 0, bn = 0;
  for (std::size_t i = 0; i < left.tokens.size(); ++i) {
    for (std::size_t j = 0; j < right.tokens.size(); ++j) {
      if (!match_at(i, j)) continue;
      if (i > 0 && j > 0 && match_at(i - 1, j - 1)) continue;  // not a run start
      std::size_t n = 0;
      while (match_at(i + n, j + n)) ++n;
      if (n > bn || (n == bn && i >= bl)) {
        bl = i;
        br = j;
        bn = n;
      }
    }
  }

  MatchResult m;
  if (bn == 0 || bn < cfg.min_overlap_tokens) return m;
  if (cfg.strict_min_chars) {
    const std::size_t chars = left.tokens[bl + bn - 1].end - left.tokens[bl].start;
    if (chars <= cfg.max_token_char_len) return m;
  }
  m.l = bl;
  m.r = br;
  m.n_o = bn;
  return m;
}

// --------------------------------------------------------------- generators

// Random text over an alphabet with sprinkled whitespace, punctuation and
// out-of-alphabet characters.
inline std::u32string random_text(std::mt19937& rng, std::u32string_view alphabet,
                                  std::size_t len, bool spaces = true) {
  static const std::u32string punct = U"!,.:;?";
  std::u32string out;
  out.reserve(len);
  while (out.size() < len) {
    const std::size_t roll = pick(rng, 100);
    if (spaces && roll < 12)
      out += U' ';
    else if (roll < 14)
      out += punct[pick(rng, punct.size())];
    else if (roll < 15)
      out += char32_t(0x4E00 + pick(rng, 32));
    else
      out += alphabet[pick(rng, alphabet.size())];
  }
  return out;
}

inline std::vector<TokenId> ids_of(const std::vector<TokenSpan>& tokens) {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const TokenSpan& t : tokens) ids.push_back(t.id);
  return ids;
}

}  // namespace sup
