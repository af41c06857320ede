#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctop/euclid.hpp"

using namespace ctop;

TEST_CASE("point names list exactly the containing balls") {
  auto R1 = euclidean_space(1);
  auto d0 = point_name(R1, {rat(0)});
  auto ws = query(d0, 50);
  Word b01 = ball_encode(RationalBall{{rat(0)}, rat(1)});
  CHECK(std::find(ws.begin(), ws.end(), b01) != ws.end());
  for (auto& w : ws) {
    auto b = ball_decode(w, 1);
    REQUIRE(b);
    CHECK(ball_contains(*b, {rat(0)}));
  }
  // prefix monotonicity across budgets
  auto w20 = query(d0, 20);
  CHECK(std::equal(w20.begin(), w20.end(), ws.begin()));
}

TEST_CASE("membership semi-decision") {
  auto R1 = euclidean_space(1);
  Word b01 = ball_encode(RationalBall{{rat(0)}, rat(1)});
  auto W = theta_from_codes(R1, {b01});
  CHECK(member_semidecide(point_name(R1, {rat(0)}), W, 50).confirmed);
  CHECK(!member_semidecide(point_name(R1, {rat(2)}), W, 2000).confirmed);
}

TEST_CASE("separation by listed disjoint balls") {
  auto R1 = euclidean_space(1);
  auto R2 = euclidean_space(2);
  auto d0 = point_name(R1, {rat(0)});
  auto d1 = point_name(R1, {rat(1)});
  auto sep = separate_points(d0, d1, 5000);
  REQUIRE(sep);
  auto bu = ball_decode(sep->first, 1), bv = ball_decode(sep->second, 1);
  CHECK(ball_disjoint(*bu, *bv));
  CHECK(ball_contains(*bu, {rat(0)}));
  CHECK(ball_contains(*bv, {rat(1)}));
  CHECK(separate_points(point_name(R2, {rat(0), rat(0)}), point_name(R2, {rat(0), rat(1)}), 10000));
  CHECK(!separate_points(d0, point_name(R1, {rat(0)}), 3000));
}

TEST_CASE("cauchy and ball names translate both ways") {
  auto R1 = euclidean_space(1);
  auto c = cauchy_from_rational({rat(1, 2)});
  auto dc = cauchy_to_delta(R1, c);
  for (auto& w : query(dc, 300)) {
    auto b = ball_decode(w, 1);
    REQUIRE(b);
    CHECK(ball_contains(*b, {rat(1, 2)}));
  }
  auto back = delta_to_cauchy(dc, 1);
  auto ents = cauchy_entries(back, 4000);
  CHECK(ents.size() >= 21);
  for (std::size_t i = 0; i < ents.size(); ++i) {
    Rat e = abs(ents[i][0] - rat(1, 2));
    CHECK(e < pow2(-(long)i));
  }
}

TEST_CASE("homeomorphism transducers compose to the identity") {
  auto R1 = euclidean_space(1);
  auto dh = apply_translator(ball_homeo_forward(R1, 1), point_name(R1, {rat(1, 2)}));
  auto tb = tightest_ball(dh, 1, 200);
  REQUIRE(tb);
  CHECK(abs(tb->center[0] - rat(2, 3)) < tb->radius);
  CHECK(tb->radius < pow2(-20));
  auto dhh = apply_translator(ball_homeo_backward(R1, 1), dh);
  auto tb2 = tightest_ball(dhh, 1, 200);
  REQUIRE(tb2);
  CHECK(abs(tb2->center[0] - rat(1, 2)) < tb2->radius + pow2(-20));
  CHECK(tb2->radius < pow2(-16));
}

TEST_CASE("affine transducers hit exact values") {
  auto R2 = euclidean_space(2);
  auto tr = apply_translator(translation_map(R2, {rat(1), rat(-2)}),
                             point_name(R2, {rat(3), rat(5)}));
  auto tb = tightest_ball(tr, 2, 100);
  REQUIRE(tb);
  CHECK(sq_dist(tb->center, {rat(2), rat(7)}) < tb->radius * tb->radius);
  CHECK_THROWS_AS(
      apply_translator(translation_map(R2, {rat(1), rat(0)}),
                       theta_from_codes(R2, {ball_encode(RationalBall{{rat(0), rat(0)}, rat(1)})})),
      ContractViolation);
}

TEST_CASE("dovetailing is fair and bounded") {
  TaskSource tasks = [](std::uint64_t k, Budget bud) -> SemiDecision {
    if (k == 7 && bud >= 50) return SemiDecision::Confirmed(50);
    return SemiDecision::Unknown(bud);
  };
  auto evs = dovetail(tasks, dovetail_bound(7, 50));
  REQUIRE(evs.size() == 1);
  CHECK(evs[0].task == 7);
  CHECK(dovetail(tasks, 100).empty());
}
