#include "lopt/tokenizer.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "lopt/unicode.hpp"

namespace lopt {

TokenizerConfig TokenizerConfig::bpe_defaults() {
  TokenizerConfig cfg;
  cfg.algorithm = Algorithm::bpe;
  cfg.pretokenizer = PreTokenizerMode::whitespace;
  return cfg;
}

TokenizerConfig TokenizerConfig::wordpiece_defaults() {
  TokenizerConfig cfg;
  cfg.algorithm = Algorithm::wordpiece;
  cfg.pretokenizer = PreTokenizerMode::whitespace_punct;
  return cfg;
}

void validate(const TokenizerConfig& config) {
  if (config.algorithm == Algorithm::wordpiece && config.byte_fallback)
    throw std::invalid_argument("tokenizer config: byte_fallback applies to BPE only");
  if (config.algorithm == Algorithm::bpe && config.fragment_unk)
    throw std::invalid_argument("tokenizer config: fragment_unk applies to WordPiece only");
}

std::vector<PreToken> pretokenize(std::u32string_view text, const TokenizerConfig& config) {
  std::vector<PreToken> out;
  const bool isolate = config.pretokenizer == PreTokenizerMode::whitespace_punct;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    if (is_whitespace(text[i])) {
      ++i;
      continue;
    }
    if (isolate && is_punct(text[i])) {
      out.push_back({text.substr(i, 1), i, i + 1});
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && !is_whitespace(text[j]) && !(isolate && is_punct(text[j]))) ++j;
    out.push_back({text.substr(i, j - i), i, j});
    i = j;
  }
  return out;
}

namespace {

// One pre-token through the BPE merge loop. Pieces are tracked as [start, end)
// offsets into the word so spans fall out for free. Each round picks the
// lowest-rank adjacent pair present and merges every occurrence of it in one
// left-to-right pass; a merged piece l+r can never re-form the pair (l, r), so
// a pair type is exhausted once processed and the round count is bounded by
// the merge-table size.
void bpe_word(std::u32string_view word, std::size_t word_start, const Vocabulary& vocab,
              const MergeTable& merges, const TokenizerConfig& config,
              std::vector<TokenSpan>& out) {
  std::vector<std::pair<std::size_t, std::size_t>> pieces;
  pieces.reserve(word.size());
  for (std::size_t k = 0; k < word.size(); ++k) pieces.emplace_back(k, k + 1);

  const auto piece_text = [&](const std::pair<std::size_t, std::size_t>& p) {
    return word.substr(p.first, p.second - p.first);
  };

  if (merges.size() != 0) {
    while (pieces.size() > 1) {
      int best = std::numeric_limits<int>::max();
      std::u32string_view best_l, best_r;
      for (std::size_t j = 0; j + 1 < pieces.size(); ++j) {
        const auto rank = merges.rank_of(piece_text(pieces[j]), piece_text(pieces[j + 1]));
        if (rank && *rank < best) {
          best = *rank;
          best_l = piece_text(pieces[j]);
          best_r = piece_text(pieces[j + 1]);
        }
      }
      if (best == std::numeric_limits<int>::max()) break;
      std::vector<std::pair<std::size_t, std::size_t>> next;
      next.reserve(pieces.size());
      std::size_t j = 0;
      while (j < pieces.size()) {
        if (j + 1 < pieces.size() && piece_text(pieces[j]) == best_l &&
            piece_text(pieces[j + 1]) == best_r) {
          next.emplace_back(pieces[j].first, pieces[j + 1].second);
          j += 2;
        } else {
          next.push_back(pieces[j]);
          j += 1;
        }
      }
      pieces = std::move(next);
    }
  }

  for (const auto& [s, e] : pieces) {
    if (const auto id = vocab.find(word.substr(s, e - s))) {
      out.push_back({*id, word_start + s, word_start + e});
    } else if (config.byte_fallback) {
      for (std::size_t k = s; k < e; ++k)
        out.push_back({vocab.unk_id(), word_start + k, word_start + k + 1});
    } else {
      out.push_back({vocab.unk_id(), word_start + s, word_start + e});
    }
  }
}

// One pre-token through greedy longest-prefix WordPiece matching. Candidates
// after the first piece carry the continuation prefix; candidate core length
// is capped by the vocabulary's longest entry.
void wordpiece_word(std::u32string_view word, std::size_t word_start, const Vocabulary& vocab,
                    const TokenizerConfig& config, std::vector<TokenSpan>& out) {
  const std::size_t n = word.size();
  const std::u32string& prefix = vocab.continuation_prefix();
  const std::size_t maxlen = std::max<std::size_t>(vocab.max_token_char_len(), 1);

  std::vector<TokenSpan> matched;
  std::u32string candidate;
  std::size_t start = 0;
  bool bad = false;
  while (start < n) {
    const std::size_t limit = std::min(n, start + maxlen);
    std::size_t matched_end = 0;
    TokenId matched_id = -1;
    for (std::size_t end = limit; end > start; --end) {
      candidate.clear();
      if (start > 0) candidate = prefix;
      candidate.append(word.substr(start, end - start));
      if (const auto id = vocab.find(candidate)) {
        matched_end = end;
        matched_id = *id;
        break;
      }
    }
    if (matched_end == 0) {
      bad = true;
      break;
    }
    matched.push_back({matched_id, word_start + start, word_start + matched_end});
    start = matched_end;
  }

  if (!bad) {
    out.insert(out.end(), matched.begin(), matched.end());
  } else if (config.fragment_unk) {
    out.insert(out.end(), matched.begin(), matched.end());
    out.push_back({vocab.unk_id(), word_start + start, word_start + n});
  } else {
    out.push_back({vocab.unk_id(), word_start, word_start + n});
  }
}

}  // namespace

std::vector<TokenSpan> tokenize_bpe(std::u32string_view text, const Vocabulary& vocab,
                                    const MergeTable& merges, const TokenizerConfig& config) {
  std::u32string lowered;
  std::u32string_view working = text;
  if (config.lowercase) {
    lowered = to_lower(text);
    working = lowered;
  }
  std::vector<TokenSpan> out;
  for (const PreToken& w : pretokenize(working, config))
    bpe_word(w.text, w.start, vocab, merges, config, out);
  return out;
}

std::vector<TokenSpan> tokenize_wordpiece(std::u32string_view text, const Vocabulary& vocab,
                                          const TokenizerConfig& config) {
  std::u32string lowered;
  std::u32string_view working = text;
  if (config.lowercase) {
    lowered = to_lower(text);
    working = lowered;
  }
  std::vector<TokenSpan> out;
  for (const PreToken& w : pretokenize(working, config))
    wordpiece_word(w.text, w.start, vocab, config, out);
  return out;
}

Tokenizer::Tokenizer(Vocabulary vocab, MergeTable merges, TokenizerConfig config)
    : vocab_(std::move(vocab)), merges_(std::move(merges)), config_(config) {
  if (config_.algorithm != Algorithm::bpe)
    throw std::invalid_argument("tokenizer: a merge table goes with a BPE config");
  validate(config_);
  merges_.validate_against(vocab_);
}

Tokenizer::Tokenizer(Vocabulary vocab, TokenizerConfig config)
    : vocab_(std::move(vocab)), config_(config) {
  if (config_.algorithm != Algorithm::wordpiece)
    throw std::invalid_argument("tokenizer: a BPE config needs a merge table");
  validate(config_);
}

std::vector<TokenSpan> Tokenizer::tokenize(std::u32string_view text) const {
  if (config_.algorithm == Algorithm::bpe) return tokenize_bpe(text, vocab_, merges_, config_);
  return tokenize_wordpiece(text, vocab_, config_);
}

std::vector<TokenSpan> Tokenizer::tokenize_utf8(std::string_view utf8) const {
  const std::u32string text = decode_utf8(utf8);
  return tokenize(text);
}

namespace {

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Tokenizer load_bpe(const std::string& vocab_json_path, const std::string& merges_txt_path,
                   TokenizerConfig config) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(vocab_json_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(vocab_json_path + ": " + e.what());
  }
  if (!j.is_object())
    throw std::runtime_error(vocab_json_path + ": expected a JSON object mapping token to id");

  std::vector<std::pair<std::u32string, TokenId>> entries;
  entries.reserve(j.size());
  for (const auto& [token, id] : j.items()) {
    if (!id.is_number_integer())
      throw std::runtime_error(vocab_json_path + ": id for token \"" + token +
                               "\" is not an integer");
    entries.emplace_back(decode_utf8(token), id.get<TokenId>());
  }

  std::u32string unk;
  if (j.contains("[UNK]"))
    unk = U"[UNK]";
  else if (j.contains("<unk>"))
    unk = U"<unk>";
  else
    throw std::runtime_error(vocab_json_path + ": no unknown-token entry ([UNK] or <unk>)");

  Vocabulary vocab;
  try {
    vocab = Vocabulary(std::move(entries), std::move(unk));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(vocab_json_path + ": " + e.what());
  }

  MergeTable merges;
  std::istringstream lines(read_text_file(merges_txt_path));
  std::string line;
  std::size_t line_no = 0;
  int rank = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("#version", 0) == 0) continue;
    if (line.empty())
      throw std::runtime_error(merges_txt_path + ":" + std::to_string(line_no) + ": empty line");
    const std::size_t sp = line.find(' ');
    if (sp == std::string::npos || sp == 0 || sp + 1 >= line.size() ||
        line.find(' ', sp + 1) != std::string::npos)
      throw std::runtime_error(merges_txt_path + ":" + std::to_string(line_no) +
                               ": expected \"left right\"");
    try {
      merges.add(decode_utf8(line.substr(0, sp)), decode_utf8(line.substr(sp + 1)), rank);
    } catch (const std::invalid_argument& e) {
      throw std::runtime_error(merges_txt_path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    ++rank;
  }

  config.algorithm = Algorithm::bpe;
  try {
    return Tokenizer(std::move(vocab), std::move(merges), config);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(merges_txt_path + ": " + e.what());
  }
}

Tokenizer load_wordpiece(const std::string& vocab_txt_path, TokenizerConfig config) {
  std::istringstream lines(read_text_file(vocab_txt_path));
  std::vector<std::pair<std::u32string, TokenId>> entries;
  std::string line;
  std::size_t line_no = 0;
  TokenId id = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty())
      throw std::runtime_error(vocab_txt_path + ":" + std::to_string(line_no) + ": empty line");
    entries.emplace_back(decode_utf8(line), id++);
  }
  if (entries.empty()) throw std::runtime_error(vocab_txt_path + ": no entries");

  Vocabulary vocab;
  try {
    vocab = Vocabulary(std::move(entries), U"[UNK]", U"##");
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(vocab_txt_path + ": " + e.what());
  }

  config.algorithm = Algorithm::wordpiece;
  return Tokenizer(std::move(vocab), config);
}

std::u32string random_tokenizer_alphabet(std::size_t alphabet_size) {
  static const std::u32string pool =
      U"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::u32string out;
  out.reserve(alphabet_size);
  for (std::size_t i = 0; i < alphabet_size; ++i)
    out.push_back(i < pool.size() ? pool[i] : char32_t(0x4E00 + (i - pool.size())));
  return out;
}

Tokenizer gen_random_tokenizer(unsigned seed, std::size_t alphabet_size, std::size_t n_merges) {
  if (alphabet_size < 2)
    throw std::invalid_argument("gen_random_tokenizer: alphabet_size must be >= 2");
  std::mt19937 rng(seed);
  const std::u32string alphabet = random_tokenizer_alphabet(alphabet_size);

  std::vector<std::pair<std::u32string, TokenId>> entries;
  std::vector<std::u32string> tokens;  // merge operand pool
  std::unordered_set<std::u32string> seen;
  TokenId next = 0;
  for (char32_t c : alphabet) {
    std::u32string t(1, c);
    entries.emplace_back(t, next++);
    seen.insert(t);
    tokens.push_back(std::move(t));
  }

  MergeTable merges;
  int rank = 0;
  for (std::size_t m = 0; m < n_merges; ++m) {
    for (int attempt = 0; attempt < 16; ++attempt) {
      const std::u32string& l = tokens[rng() % tokens.size()];
      const std::u32string& r = tokens[rng() % tokens.size()];
      std::u32string merged = l + r;
      if (merged.size() > 24 || seen.count(merged) != 0) continue;
      merges.add(l, r, rank++);
      entries.emplace_back(merged, next++);
      seen.insert(merged);
      tokens.push_back(std::move(merged));
      break;
    }
  }

  entries.emplace_back(U"[UNK]", next++);
  return Tokenizer(Vocabulary(std::move(entries), U"[UNK]"), std::move(merges),
                   TokenizerConfig::bpe_defaults());
}

}  // namespace lopt
