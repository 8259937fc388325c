#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace lopt {

using TokenId = std::int32_t;

// Half-open character span [start, end) in code-point units of the source
// text. Token lists are always sorted by start and non-overlapping.
struct TokenSpan {
  TokenId id = -1;
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct PreToken {
  std::u32string_view text;  // view into the string being tokenized
  std::size_t start = 0;
  std::size_t end = 0;
};

}  // namespace lopt
