#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lopt/token.hpp"
#include "lopt/vocab.hpp"

namespace lopt {

enum class Algorithm { bpe, wordpiece };

// whitespace: pre-tokens are maximal runs of non-whitespace.
// whitespace_punct: additionally, every punctuation code point is isolated as
// its own pre-token (BERT-style basic tokenization).
enum class PreTokenizerMode { whitespace, whitespace_punct };

struct TokenizerConfig {
  Algorithm algorithm = Algorithm::bpe;
  bool lowercase = false;
  PreTokenizerMode pretokenizer = PreTokenizerMode::whitespace;
  // BPE only: an unknown piece emits one unk span per character instead of a
  // single unk span covering the piece.
  bool byte_fallback = false;
  // WordPiece only: on a failed match, keep the already matched prefix tokens
  // and emit one unk span for the unmatched remainder of the pre-token
  // (consuming it, so tokenization always terminates). Default behavior is
  // BERT's: the whole pre-token collapses into one unk span.
  bool fragment_unk = false;

  static TokenizerConfig bpe_defaults();
  static TokenizerConfig wordpiece_defaults();
};

// Rejects option combinations outside each algorithm's contract
// (byte_fallback with WordPiece, fragment_unk with BPE).
void validate(const TokenizerConfig& config);

std::vector<PreToken> pretokenize(std::u32string_view text, const TokenizerConfig& config);

std::vector<TokenSpan> tokenize_bpe(std::u32string_view text, const Vocabulary& vocab,
                                    const MergeTable& merges, const TokenizerConfig& config);

std::vector<TokenSpan> tokenize_wordpiece(std::u32string_view text, const Vocabulary& vocab,
                                          const TokenizerConfig& config);

// The (vocabulary, merges, config) triple with the algorithm dispatch.
class Tokenizer {
 public:
  Tokenizer(Vocabulary vocab, MergeTable merges, TokenizerConfig config);  // BPE
  Tokenizer(Vocabulary vocab, TokenizerConfig config);                     // WordPiece

  std::vector<TokenSpan> tokenize(std::u32string_view text) const;
  std::vector<TokenSpan> tokenize_utf8(std::string_view utf8) const;

  const Vocabulary& vocab() const { return vocab_; }
  const MergeTable& merges() const { return merges_; }
  const TokenizerConfig& config() const { return config_; }

 private:
  Vocabulary vocab_;
  MergeTable merges_;
  TokenizerConfig config_;
};

// File loaders (formats documented in the README):
//   BPE: vocab is a JSON object {token: id}; merges is one "left right" rule
//   per line, rank = line index (an HF-style "#version" first line is
//   skipped). The unk entry is "[UNK]" or "<unk>".
//   WordPiece: one token per line, id = line index, "##" continuation prefix,
//   "[UNK]" required.
// Both throw std::runtime_error with the offending file/line on bad input.
Tokenizer load_bpe(const std::string& vocab_json_path, const std::string& merges_txt_path,
                   TokenizerConfig config = TokenizerConfig::bpe_defaults());
Tokenizer load_wordpiece(const std::string& vocab_txt_path,
                         TokenizerConfig config = TokenizerConfig::wordpiece_defaults());

// Deterministic toy BPE generator for fuzzing: single-char entries over the
// alphabet pool, then n_merges random compositions of existing entries (some
// attempts may be skipped when they collide, so the realized merge count can
// be slightly lower). Same seed, same tokenizer, on every platform.
Tokenizer gen_random_tokenizer(unsigned seed, std::size_t alphabet_size, std::size_t n_merges);

// The alphabet pool gen_random_tokenizer draws from, exposed so test string
// generators can sample matching characters.
std::u32string random_tokenizer_alphabet(std::size_t alphabet_size);

}  // namespace lopt
