#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctop/word.hpp"

using namespace ctop;

TEST_CASE("wrapping matches the symbol-block formula") {
  CHECK(wrap("") == "11011");
  CHECK(wrap("1") == "1101011");
  CHECK(wrap("01") == "110001011");
  CHECK(wrap("#") == "110#011");
}

TEST_CASE("scan recovers wrapped payloads in order") {
  CHECK(scan_wrapped("1101011") == std::vector<Word>{"1"});
  CHECK(scan_wrapped("0" + wrap("1") + "0" + wrap("01")) == std::vector<Word>{"1", "01"});
  CHECK(scan_wrapped("10101").empty());
  CHECK(scan_wrapped(tuple({"-", "/", ""})) == std::vector<Word>{"-", "/", ""});
}

TEST_CASE("wrap/scan round-trips random words") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 2000; ++iter) {
    std::vector<Word> parts(1 + rng() % 4);
    for (auto& p : parts) {
      p.resize(rng() % 8);
      for (auto& c : p) c = kAlphabet[rng() % kAlphabetSize];
    }
    CHECK(scan_wrapped(tuple(parts)) == parts);
  }
}

TEST_CASE("shortlex enumeration is injective and onto short words") {
  std::set<Word> seen;
  for (std::uint64_t k = 0; k < 5 + 25 + 125 + 1; ++k) CHECK(seen.insert(enumerate_word(k)).second);
  CHECK(enumerate_word(0) == "");
  CHECK(enumerate_word(1) == "0");
  CHECK(seen.count("##"));
  for (const Word& w : seen) CHECK(is_word(w));
}

TEST_CASE("word streams are prefix-monotone") {
  WordStream s = interleave(WordStream::repeat("01"), WordStream::constant("##--"));
  Word prev;
  for (Budget b = 0; b <= 40; ++b) {
    Word cur = s.prefix(b);
    CHECK(cur.size() <= b);
    CHECK(cur.compare(0, prev.size(), prev) == 0);
    prev = cur;
  }
  WordStream t = tuple_mixed("01", WordStream::repeat("#"));
  CHECK(t.prefix(9) == "110001011");
  CHECK(t.prefix(12) == "110001011###");
}
