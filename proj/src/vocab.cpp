#include "lopt/vocab.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

#include "lopt/unicode.hpp"

namespace lopt {

Vocabulary::Vocabulary(std::vector<std::pair<std::u32string, TokenId>> entries,
                       std::u32string unk_token, std::u32string continuation_prefix)
    : unk_token_(std::move(unk_token)), continuation_prefix_(std::move(continuation_prefix)) {
  if (entries.empty()) throw std::invalid_argument("vocabulary: no entries");
  std::unordered_set<TokenId> ids;
  ids.reserve(entries.size());
  entries_.reserve(entries.size());
  for (auto& [token, id] : entries) {
    if (!ids.insert(id).second)
      throw std::invalid_argument("vocabulary: duplicate id " + std::to_string(id));
    std::u32string key = token;  // keep a copy for the error message
    if (!entries_.emplace(std::move(token), id).second)
      throw std::invalid_argument("vocabulary: duplicate token \"" + encode_utf8(key) + "\"");
  }
  const auto unk = entries_.find(std::u32string_view(unk_token_));
  if (unk == entries_.end())
    throw std::invalid_argument("vocabulary: unknown-token entry \"" + encode_utf8(unk_token_) +
                                "\" is not in the vocabulary");
  unk_id_ = unk->second;
  // The unk marker never matches raw text, so it does not bound piece length.
  for (const auto& [token, id] : entries_) {
    if (token == unk_token_) continue;
    std::size_t len = token.size();
    if (!continuation_prefix_.empty() && token.size() > continuation_prefix_.size() &&
        std::u32string_view(token).substr(0, continuation_prefix_.size()) == continuation_prefix_)
      len = token.size() - continuation_prefix_.size();
    if (len > max_token_char_len_) max_token_char_len_ = len;
  }
}

void MergeTable::add(std::u32string left, std::u32string right, int rank) {
  auto key = std::make_pair(std::move(left), std::move(right));
  if (ranks_.count(key) != 0)
    throw std::invalid_argument("merge table: duplicate pair \"" + encode_utf8(key.first) + " " +
                                encode_utf8(key.second) + "\"");
  ranks_.emplace(std::move(key), rank);
}

void MergeTable::validate_against(const Vocabulary& vocab) const {
  for (const auto& [pair, rank] : ranks_) {
    if (!vocab.contains(pair.first) || !vocab.contains(pair.second) ||
        !vocab.contains(pair.first + pair.second))
      throw std::invalid_argument("merge table: rule \"" + encode_utf8(pair.first) + " " +
                                  encode_utf8(pair.second) + "\" (rank " + std::to_string(rank) +
                                  ") references tokens missing from the vocabulary");
  }
}

}  // namespace lopt
