#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "lopt/baselines.hpp"
#include "support.hpp"

using namespace lopt;

// ----------------------------------------------------------- delimiter split

TEST_CASE("delimiter_split frozen example") {
  const std::u32string text = U"aa bb cc dd";
  const auto chunks = delimiter_split(text, {Delimiter::whitespace, 4});
  REQUIRE(chunks.size() == 3);
  CHECK(chunks[0].global_start == 0);
  CHECK(chunks[0].text == U"aa bb");
  CHECK(chunks[1].global_start == 5);
  CHECK(chunks[1].text == U" cc");
  CHECK(chunks[2].global_start == 8);
  CHECK(chunks[2].text == U" dd");
}

TEST_CASE("delimiter_split edge cases") {
  CHECK(delimiter_split(U"", {Delimiter::whitespace, 4}).empty());
  CHECK_THROWS_AS(delimiter_split(U"ab", {Delimiter::whitespace, 0}), std::invalid_argument);

  // no delimiter anywhere: one chunk regardless of target
  const auto one = delimiter_split(U"aaaaaaaa", {Delimiter::whitespace, 2});
  REQUIRE(one.size() == 1);
  CHECK(one[0].text == U"aaaaaaaa");

  // target at least the length: one chunk
  const auto whole = delimiter_split(U"aa bb", {Delimiter::whitespace, 5});
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].text == U"aa bb");

  // delimiter choice matters
  const auto commas = delimiter_split(U"ab,cd,ef", {Delimiter::comma, 3});
  REQUIRE(commas.size() == 2);
  CHECK(commas[0].text == U"ab,cd");
  CHECK(commas[1].text == U",ef");
  const auto periods = delimiter_split(U"ab.cd.ef", {Delimiter::period, 3});
  REQUIRE(periods.size() == 2);
  CHECK(periods[1].text == U".ef");
}

TEST_CASE("delimiter_split chunks concatenate to the input") {
  std::mt19937 rng(777);
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t len = sup::pick(rng, 400);
    const std::u32string text = sup::random_text(rng, U"abcdefg", len);
    const Delimiter d = static_cast<Delimiter>(sup::pick(rng, 3));
    const std::size_t target = 1 + sup::pick(rng, len + 3);
    const auto chunks = delimiter_split(text, {d, target});
    std::u32string rebuilt;
    std::size_t expect_start = 0;
    for (const auto& c : chunks) {
      REQUIRE(c.global_start == expect_start);
      if (&c != &chunks.front()) CHECK(c.text.front() == delimiter_char(d));
      rebuilt += c.text;
      expect_start += c.text.size();
    }
    REQUIRE(rebuilt == text);
  }
}

// ----------------------------------------------- delimiter parallel tokenize

TEST_CASE("delimiter tokenization is exact when cuts avoid tokens") {
  const Tokenizer tok = sup::make_toybpe();
  const std::u32string text = U"abc de abc de abc";
  const auto seq = tok.tokenize(text);
  const auto par =
      delimiter_tokenize_parallel(text, tok, {Delimiter::whitespace, 3}, WorkerPoolConfig{4});
  CHECK(par == seq);
}

TEST_CASE("delimiter tokenization severs merges that cross a cut") {
  // "habc,de" merges to [h]["abc,"][de]; a comma cut with target 2 lands
  // inside "abc," and the severed halves tokenize to [abc][,] instead.
  const Tokenizer tok = sup::make_demo_bpe();
  const std::u32string text = U"habc,de";
  CHECK(sup::ids_of(tok.tokenize(text)) == std::vector<TokenId>{7, 15, 14});
  const auto par =
      delimiter_tokenize_parallel(text, tok, {Delimiter::comma, 2}, WorkerPoolConfig{4});
  CHECK(sup::ids_of(par) == std::vector<TokenId>{7, 13, 10, 14});
}

TEST_CASE("delimiter tokenization: exact iff no oracle token straddles a cut") {
  const Tokenizer tok = sup::make_demo_bpe();
  std::mt19937 rng(31337);
  int exact = 0, severed = 0;
  for (int iter = 0; iter < 400; ++iter) {
    // word stream: punctuation attaches to the word before it, and words
    // ending in "abc" merge with that punctuation ("abc," / "abc."), so a
    // cut at such a delimiter severs a token
    static const std::u32string words[] = {U"de", U"fg",    U"hij", U"jj",
                                           U"abc", U"deabc", U"ab",  U"fgabc"};
    const std::size_t n_words = 2 + sup::pick(rng, 40);
    std::u32string text;
    for (std::size_t w = 0; w < n_words; ++w) {
      text += words[sup::pick(rng, 8)];
      if (sup::pick(rng, 2) == 0) text += sup::pick(rng, 2) == 0 ? U'.' : U',';
      if (sup::pick(rng, 5) != 0) text += U' ';
    }
    const std::size_t len = text.size();
    const Delimiter d = sup::pick(rng, 2) == 0 ? Delimiter::comma : Delimiter::period;
    const DelimiterConfig cfg{d, 1 + sup::pick(rng, len)};

    const auto chunks = delimiter_split(text, cfg);
    const auto seq = tok.tokenize(text);
    bool straddle = false;
    for (std::size_t c = 1; c < chunks.size() && !straddle; ++c)
      for (const TokenSpan& t : seq)
        if (t.start < chunks[c].global_start && chunks[c].global_start < t.end) {
          straddle = true;
          break;
        }

    const auto par = delimiter_tokenize_parallel(text, tok, cfg, WorkerPoolConfig{4});
    const bool is_exact = par == seq;
    REQUIRE(is_exact == !straddle);
    (is_exact ? exact : severed) += 1;
  }
  CHECK(exact > 40);
  CHECK(severed > 40);
  MESSAGE("exact: ", exact, ", severed: ", severed);
}

// ----------------------------------------------------------- lcs id merging

TEST_CASE("lcs_overlap_merge frozen examples") {
  using Ids = std::vector<TokenId>;
  LcsConfig cfg;
  cfg.overlap_len = 1;
  cfg.window = 3;

  // tail [7,8,9] vs head [8,9,4]: run [8,9] found, right continues with 4
  const std::vector<TokenSpan> left = {{1, 0, 1}, {7, 1, 2}, {8, 2, 3}, {9, 3, 4}};
  const std::vector<TokenSpan> right = {{8, 2, 3}, {9, 3, 4}, {4, 4, 5}};
  CHECK(lcs_overlap_merge(left, right, cfg) == Ids{1, 7, 8, 9, 4});

  // degenerate repetition: the id-only merge conflates the 7-run and drops a
  // token; the position-aware truth here is [7,7,7,7,5]
  const std::vector<TokenSpan> rep_left = {{7, 0, 1}, {7, 1, 2}, {7, 2, 3}};
  const std::vector<TokenSpan> rep_right = {{7, 2, 3}, {7, 3, 4}, {7, 4, 5}, {5, 5, 6}};
  CHECK(lcs_overlap_merge(rep_left, rep_right, cfg) == Ids{7, 7, 7, 5});

  // no common run at all: naive concatenation
  const std::vector<TokenSpan> a = {{1, 0, 1}, {2, 1, 2}};
  const std::vector<TokenSpan> b = {{3, 1, 2}, {4, 2, 3}};
  CHECK(lcs_overlap_merge(a, b, cfg) == Ids{1, 2, 3, 4});
}

TEST_CASE("lcs parallel tokenization is exact on locally unique text") {
  // every word appears once, so every id near a boundary is unique and the
  // longest common id run is the true overlap
  const Tokenizer tok = sup::make_demo_bpe();
  const std::u32string text = U"ab fg hij de a b c hi j i h g f e d";
  const auto oracle = sup::ids_of(tok.tokenize(text));
  LcsConfig cfg;
  cfg.overlap_len = 4;
  const auto got = lcs_tokenize_parallel(text, tok, 14, cfg, WorkerPoolConfig{4});
  CHECK(got == oracle);
}

TEST_CASE("lcs parallel tokenization drifts on periodic text") {
  const Tokenizer tok = sup::make_toybpe();
  std::u32string text;
  for (int i = 0; i < 40; ++i) text += U"abc";
  const auto oracle = sup::ids_of(tok.tokenize(text));
  REQUIRE(oracle == std::vector<TokenId>(40, 11));

  LcsConfig cfg;
  cfg.overlap_len = 6;
  const auto got = lcs_tokenize_parallel(text, tok, 16, cfg, WorkerPoolConfig{4});
  CHECK(got != oracle);
}

TEST_CASE("lcs parallel tokenization argument checks and degenerate shapes") {
  const Tokenizer tok = sup::make_toybpe();
  LcsConfig bad;
  bad.overlap_len = 0;
  CHECK_THROWS_AS(lcs_tokenize_parallel(U"abc", tok, 2, bad, WorkerPoolConfig{2}),
                  std::invalid_argument);

  LcsConfig cfg;
  cfg.overlap_len = 2;
  CHECK(lcs_tokenize_parallel(U"", tok, 4, cfg, WorkerPoolConfig{2}).empty());

  // single chunk: ids verbatim
  const std::u32string text = U"abc de";
  CHECK(lcs_tokenize_parallel(text, tok, 64, cfg, WorkerPoolConfig{2}) ==
        sup::ids_of(tok.tokenize(text)));
}
