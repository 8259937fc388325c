#pragma once

#include <string>
#include <string_view>

namespace lopt {

// Character indices everywhere in this library are code-point offsets, never
// byte offsets, so all core algorithms run on u32 text. Decoding is lenient:
// an invalid byte decodes to its own value, keeping every input tokenizable.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);

bool is_whitespace(char32_t c);
bool is_punct(char32_t c);

// Per-code-point, length-preserving lowercasing (ASCII + Latin-1 supplement;
// anything else maps to itself). Deliberately no NFC/NFD or other
// length-changing normalization: offsets must survive.
char32_t to_lower_char(char32_t c);
std::u32string to_lower(std::u32string_view text);

}  // namespace lopt
