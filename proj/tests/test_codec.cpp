#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctop/ball.hpp"

using namespace ctop;

TEST_CASE("natural numerals") {
  CHECK(nat_encode(0) == "0");
  CHECK(nat_encode(5) == "101");
  CHECK(!nat_decode("01"));
  CHECK(!nat_decode(""));
  CHECK(*nat_decode("101") == 5);
}

TEST_CASE("rational literals are lowest-terms with explicit denominator") {
  CHECK(rat_encode(rat(1, 2)) == "1/10");
  CHECK(rat_encode(rat(-3)) == "-11/1");
  CHECK(rat_encode(rat(0)) == "0/1");
  CHECK(!rat_decode("10/100"));  // not lowest terms
  CHECK(!rat_decode("-0/1"));
  CHECK(!rat_decode("0/10"));
  CHECK(!rat_decode("11"));
  CHECK(*rat_decode("-11/1") == rat(-3));
}

TEST_CASE("rational and vector codecs round-trip") {
  std::mt19937 rng(11);
  for (int i = 0; i < 3000; ++i) {
    Rat q = rat((long)(rng() % 2001) - 1000, (long)(rng() % 999) + 1);
    CHECK(*rat_decode(rat_encode(q)) == q);
  }
  RatVec v{rat(1, 3), rat(-7, 2), rat(0)};
  CHECK(*ratvec_decode(ratvec_encode(v), 3) == v);
  CHECK(!ratvec_decode(ratvec_encode(v), 2));
  CHECK(!ratvec_decode(ratvec_encode(v) + "0", 3));  // stray symbol
}

TEST_CASE("finite-set codes respect the domain decider") {
  DomDecider dom = [](const Word& w) { return rat_valid(w); };
  auto fs = fs_encode({"1/10", "-11/1"}, FsFlavor::Union, dom);
  REQUIRE(fs);
  auto members = fs_decode(*fs, dom);
  REQUIRE(members);
  CHECK(members->count("1/10") == 1);
  CHECK(members->count("-11/1") == 1);
  CHECK(!fs_encode({"0"}, FsFlavor::Union, dom));  // not in dom
  CHECK(fs_valid(fs->code, dom));
}

TEST_CASE("ball codes and literals") {
  RationalBall b{{rat(1), rat(0)}, rat(1)};
  auto bd = ball_decode(ball_encode(b), 2);
  REQUIRE(bd);
  CHECK(bd->center == b.center);
  CHECK(bd->radius == b.radius);
  CHECK(!ball_decode(ball_encode(b), 3));
  auto pl = parse_ball_literal(ball_literal(b));
  REQUIRE(pl);
  CHECK(pl->center == b.center);
  CHECK(pl->radius == b.radius);
  // non-positive radius rejected
  CHECK(!ball_decode(tuple({rat_encode(rat(0)), rat_encode(rat(0))}), 1));
}

TEST_CASE("base enumerations are injective") {
  std::set<std::string> seen;
  for (int k = 0; k < 300; ++k) CHECK(seen.insert(rat_encode(enumerate_rational(k))).second);
  std::set<std::string> balls;
  for (int k = 0; k < 300; ++k) CHECK(balls.insert(ball_encode(enumerate_ball(2, k))).second);
  for (int k = 0; k < 100; ++k) CHECK(enumerate_positive_rational(k) > 0);
}
