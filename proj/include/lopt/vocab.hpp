#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lopt/token.hpp"

namespace lopt {

struct U32Hash {
  using is_transparent = void;
  std::size_t operator()(std::u32string_view s) const noexcept {
    return std::hash<std::u32string_view>{}(s);
  }
};

struct U32Eq {
  using is_transparent = void;
  bool operator()(std::u32string_view a, std::u32string_view b) const noexcept { return a == b; }
};

// Token-text -> id table plus the unk entry and the WordPiece continuation
// prefix ("##" for BERT-style vocabularies, empty otherwise).
class Vocabulary {
 public:
  Vocabulary() = default;

  // entries are (token text, id) pairs with unique texts and unique ids;
  // unk_token must be one of them. Throws std::invalid_argument on violation.
  Vocabulary(std::vector<std::pair<std::u32string, TokenId>> entries, std::u32string unk_token,
             std::u32string continuation_prefix = {});

  std::optional<TokenId> find(std::u32string_view token) const {
    auto it = entries_.find(token);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(std::u32string_view token) const { return entries_.find(token) != entries_.end(); }

  TokenId unk_id() const { return unk_id_; }
  const std::u32string& unk_token() const { return unk_token_; }
  const std::u32string& continuation_prefix() const { return continuation_prefix_; }

  // Longest entry in code points. The continuation prefix does not count
  // toward an entry's length, and the unk entry is excluded entirely (it
  // never matches text).
  std::size_t max_token_char_len() const { return max_token_char_len_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::u32string, TokenId, U32Hash, U32Eq> entries_;
  std::u32string unk_token_;
  std::u32string continuation_prefix_;
  TokenId unk_id_ = -1;
  std::size_t max_token_char_len_ = 0;
};

struct PairHash {
  using is_transparent = void;
  template <class A, class B>
  std::size_t operator()(const std::pair<A, B>& p) const noexcept {
    std::size_t h1 = std::hash<std::u32string_view>{}(std::u32string_view(p.first));
    std::size_t h2 = std::hash<std::u32string_view>{}(std::u32string_view(p.second));
    return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
  }
};

struct PairEq {
  using is_transparent = void;
  template <class A, class B, class C, class D>
  bool operator()(const std::pair<A, B>& x, const std::pair<C, D>& y) const noexcept {
    return std::u32string_view(x.first) == std::u32string_view(y.first) &&
           std::u32string_view(x.second) == std::u32string_view(y.second);
  }
};

// Ordered BPE merge rules: (left, right) -> rank. Lower rank merges first;
// ranks are the merge file's line indices and must be unique per pair.
class MergeTable {
 public:
  // Throws std::invalid_argument if the pair is already present.
  void add(std::u32string left, std::u32string right, int rank);

  std::optional<int> rank_of(std::u32string_view left, std::u32string_view right) const {
    auto it = ranks_.find(std::make_pair(left, right));
    if (it == ranks_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return ranks_.size(); }

  // Every rule's left part, right part and concatenated result must be vocab
  // entries; throws std::invalid_argument naming the dangling rule otherwise.
  void validate_against(const Vocabulary& vocab) const;

 private:
  std::unordered_map<std::pair<std::u32string, std::u32string>, int, PairHash, PairEq> ranks_;
};

}  // namespace lopt
