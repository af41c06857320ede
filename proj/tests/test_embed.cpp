#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctop/embed.hpp"

using namespace ctop;

TEST_CASE("circle embedding into R^8: forward values and separation") {
  auto circle = gallery_circle();
  Embedding E = circle_embedding(circle);
  CHECK(E.out_dim == 8);

  RatVec x{rat(0), rat(1)};
  auto Gx = apply_translator(E.forward, point_name(circle.balls, x));
  // (0,1) sits at chart value 0 in f+, so the first collapse factor lands on
  // the south pole; the other three factors stay at the constant pole
  RatVec expect{rat(0), rat(-1), rat(0), rat(1), rat(0), rat(1), rat(0), rat(1)};
  auto tb = tightest_ball(Gx, 8, 48);
  REQUIRE(tb);
  CHECK(ball_contains(*tb, expect));
  CHECK(tb->radius < pow2(-24));

  RatVec y = circle_point(rat(1, 3));
  auto Gy = apply_translator(E.forward, point_name(circle.balls, y));
  CHECK(separate_points(Gx, Gy, 3000));
}

TEST_CASE("circle embedding inverts back to atlas codes") {
  auto circle = gallery_circle();
  Embedding E = circle_embedding(circle);
  for (const RatVec& p : {RatVec{rat(0), rat(1)}, circle_point(rat(1, 3))}) {
    auto img = apply_translator(E.forward, point_name(circle.balls, p));
    auto back = apply_translator(E.inverse, img);
    bool tight_and_sound = false;
    for (const Word& w : query(back, 40)) {
      CHECK(circle.balls->member(w, p));
      auto c = ball_code_decode(w, 1);
      REQUIRE(c);
      auto ball = ball_decode(c->ball, 1);
      if (ball && ball->radius <= pow2(-12)) tight_and_sound = true;
    }
    CHECK(tight_and_sound);
  }
}

TEST_CASE("collapse maps pull opens back through all three branches") {
  auto circle = gallery_circle();
  Embedding E = circle_embedding(circle);
  const CollapseMap& cf = E.components[0];  // collapse through the f+ chart
  RatVec x{rat(0), rat(1)}, p10{rat(1), rat(0)};
  auto nx = point_name(circle.balls, x);

  // V misses the constant pole: the preimage stays inside the chart ball
  RationalBall V1{{rat(0), rat(-1)}, rat(1, 2)};
  CHECK(member_semidecide(nx, collapse_preimage(cf, V1), 4000).confirmed);
  CHECK(!member_semidecide(point_name(circle.balls, p10), collapse_preimage(cf, V1), 1500)
           .confirmed);

  // V covers the whole sphere: the preimage is everything
  RationalBall Vall{{rat(0), rat(1)}, rat(5, 2)};
  auto pre2 = collapse_preimage(cf, Vall);
  CHECK(member_semidecide(point_name(circle.balls, p10), pre2, 2000).confirmed);
  CHECK(member_semidecide(nx, pre2, 2000).confirmed);

  // V is a cap around the pole missing the south pole: points collapsing to
  // the pole are confirmed, the point collapsing to (0,-1) never is
  RationalBall Vcap{{rat(0), rat(1)}, rat(3, 2)};
  auto pre3 = collapse_preimage(cf, Vcap);
  CHECK(member_semidecide(point_name(circle.balls, p10), pre3, 4000).confirmed);
  CHECK(!member_semidecide(nx, pre3, 2000).confirmed);
}

TEST_CASE("torus embedding into R^3 and back") {
  TorusInstance T = gallery_torus();
  SpacePtr R3 = euclidean_space(3);
  RatVec tp{rat(1), rat(0), rat(1), rat(0)};
  auto tn = point_name(T.space, tp);
  auto tf = apply_translator(torus_embedding_forward(T, R3), tn);
  auto tb = tightest_ball(tf, 3, 48);
  REQUIRE(tb);
  CHECK(ball_contains(*tb, {rat(0), rat(2), rat(1)}));
  CHECK(tb->radius < pow2(-24));
  auto back = apply_translator(torus_embedding_inverse(T), tf);
  bool recovered = false;
  for (const Word& w : query(back, 40))
    if (T.space->member(w, tp)) recovered = true;
  CHECK(recovered);
}
