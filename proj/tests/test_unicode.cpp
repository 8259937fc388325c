#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "lopt/unicode.hpp"

using namespace lopt;

TEST_CASE("decode/encode round trip") {
  const std::string utf8 = "h\xc3\xa9llo \xe4\xb8\xad\xe6\x96\x87 \xf0\x9f\x98\x80 end";
  const std::u32string text = decode_utf8(utf8);
  CHECK(encode_utf8(text) == utf8);
}

TEST_CASE("decode counts code points, not bytes") {
  // héllo: 5 code points, 6 bytes
  const std::u32string text = decode_utf8("h\xc3\xa9llo");
  REQUIRE(text.size() == 5);
  CHECK(text[0] == U'h');
  CHECK(text[1] == char32_t(0xE9));
  CHECK(text[4] == U'o');

  // 中 is one code point
  CHECK(decode_utf8("\xe4\xb8\xad").size() == 1);
  CHECK(decode_utf8("\xe4\xb8\xad")[0] == char32_t(0x4E2D));

  // emoji above the BMP is one code point
  CHECK(decode_utf8("\xf0\x9f\x98\x80").size() == 1);
  CHECK(decode_utf8("\xf0\x9f\x98\x80")[0] == char32_t(0x1F600));
}

TEST_CASE("lenient decode keeps invalid bytes as their own values") {
  // 0xFF can never start a sequence
  const std::u32string a = decode_utf8(std::string("a\xffz", 3));
  REQUIRE(a.size() == 3);
  CHECK(a[1] == char32_t(0xFF));

  // truncated two-byte sequence at end of input
  const std::u32string b = decode_utf8(std::string("a\xc3", 2));
  REQUIRE(b.size() == 2);
  CHECK(b[1] == char32_t(0xC3));

  // lead byte followed by a non-continuation byte
  const std::u32string c = decode_utf8(std::string("\xc3q", 2));
  REQUIRE(c.size() == 2);
  CHECK(c[0] == char32_t(0xC3));
  CHECK(c[1] == U'q');
}

TEST_CASE("empty string") {
  CHECK(decode_utf8("").empty());
  CHECK(encode_utf8(U"").empty());
}

TEST_CASE("whitespace classification") {
  CHECK(is_whitespace(U' '));
  CHECK(is_whitespace(U'\t'));
  CHECK(is_whitespace(U'\n'));
  CHECK(is_whitespace(U'\r'));
  CHECK(is_whitespace(char32_t(0xA0)));    // no-break space
  CHECK(is_whitespace(char32_t(0x2003)));  // em space
  CHECK(is_whitespace(char32_t(0x3000)));  // ideographic space

  CHECK_FALSE(is_whitespace(U'a'));
  CHECK_FALSE(is_whitespace(U','));
  CHECK_FALSE(is_whitespace(U'0'));
  CHECK_FALSE(is_whitespace(char32_t(0x4E2D)));
}

TEST_CASE("punctuation classification") {
  CHECK(is_punct(U','));
  CHECK(is_punct(U'.'));
  CHECK(is_punct(U'!'));
  CHECK(is_punct(U'['));
  CHECK(is_punct(U'`'));
  CHECK(is_punct(U'~'));
  CHECK(is_punct(char32_t(0x3001)));  // ideographic comma
  CHECK(is_punct(char32_t(0xFF01)));  // fullwidth !

  CHECK_FALSE(is_punct(U'a'));
  CHECK_FALSE(is_punct(U'Z'));
  CHECK_FALSE(is_punct(U'7'));
  CHECK_FALSE(is_punct(U' '));
  CHECK_FALSE(is_punct(char32_t(0x4E2D)));
}

TEST_CASE("lowercase: ASCII and Latin-1, identity elsewhere") {
  CHECK(to_lower_char(U'A') == U'a');
  CHECK(to_lower_char(U'Z') == U'z');
  CHECK(to_lower_char(U'a') == U'a');
  CHECK(to_lower_char(U'0') == U'0');
  CHECK(to_lower_char(char32_t(0xC9)) == char32_t(0xE9));  // É -> é
  CHECK(to_lower_char(char32_t(0xD7)) == char32_t(0xD7));  // × stays
  CHECK(to_lower_char(char32_t(0x4E2D)) == char32_t(0x4E2D));

  CHECK(to_lower(U"AbC É;") == U"abc é;");
  // lowering never changes length, so spans stay valid
  CHECK(to_lower(U"HELLO 中").size() == 7);
}
