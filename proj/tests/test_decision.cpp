#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ctop/decision.hpp"

using namespace ctop;

TEST_CASE("exact ball predicates") {
  RationalBall b01{{rat(0)}, rat(1)}, b02{{rat(0)}, rat(2)}, b31{{rat(3)}, rat(1)};
  RationalBall b21{{rat(2)}, rat(1)}, b11{{rat(1)}, rat(1)};
  CHECK(ball_subset(b01, b02));
  CHECK(ball_subset(b01, b01));
  CHECK(!ball_subset(b31, b02));
  CHECK(ball_disjoint(b01, b21));     // open balls touching at 1
  CHECK(!ball_disjoint(b01, b11));
  CHECK(!ball_disjoint(b01, b01));
  CHECK(ball_subset(RationalBall{{rat(1), rat(0)}, rat(1)}, RationalBall{{rat(0), rat(0)}, rat(2)}));
  CHECK(ball_contains(b01, {rat(1, 2)}));
  CHECK(!ball_contains(b01, {rat(1)}));
}

TEST_CASE("closed forms of the shipped map family") {
  RationalBall unit{{rat(0)}, rat(1)};
  auto y = map_exact(MapFamily::ball_to_space(unit), RatVec{rat(1, 2)});
  REQUIRE(y);
  CHECK((*y)[0] == rat(2, 3));
  auto s = map_exact(MapFamily::stereographic(1, 1), RatVec{rat(0), rat(-1)});
  CHECK((*s)[0] == 0);
  auto s2 = map_exact(MapFamily::stereographic(1, 1), RatVec{rat(1), rat(0)});
  CHECK((*s2)[0] == 1);
  auto si = map_exact(MapFamily::stereographic_inv(1, 1), RatVec{rat(0)});
  REQUIRE(si);
  CHECK((*si)[0] == 0);
  CHECK((*si)[1] == rat(-1));
  auto pj = map_exact(MapFamily::projective_chart(0, 2), RatVec{rat(1), rat(2), rat(3)});
  REQUIRE(pj);
  CHECK((*pj)[0] == 2);
  CHECK((*pj)[1] == 3);
  // transition between the two stereographic hemispheres at (2,0)
  auto tr = map_exact(MapFamily::composition({MapFamily::stereographic_inv(1, 2),
                                              MapFamily::stereographic(-1, 2)}),
                      RatVec{rat(2), rat(0)});
  REQUIRE(tr);
  CHECK((*tr)[0] == rat(1, 2));
  CHECK((*tr)[1] == 0);
  CHECK(map_in_dim(MapFamily::stereographic_inv(1, 2)) == 2);
  CHECK(map_out_dim(MapFamily::stereographic_inv(1, 2)) == 3);
}

TEST_CASE("interval enclosures contain exact values") {
  std::mt19937 rng(3);
  MapFamily h = MapFamily::ball_to_space(RationalBall{{rat(0)}, rat(1)});
  for (int i = 0; i < 500; ++i) {
    Rat x = rat((long)(rng() % 1601) - 800, 1000);  // inside (-1,1)
    auto v = map_exact(h, {x});
    REQUIRE(v);
    Rat r = rat(1, (long)(rng() % 50) + 10);
    Box bx{{x - r, x + r}};
    if (bx[0].lo <= -1 || bx[0].hi >= 1) continue;
    auto img = map_box(h, bx);
    REQUIRE(img);
    CHECK((*img)[0].contains((*v)[0]));
  }
}

TEST_CASE("image containment verdicts on the ball homeomorphism") {
  RationalBall unit{{rat(0)}, rat(1)};
  ContainmentQuery holds{RationalBall{{rat(0)}, rat(1, 2)}, MapFamily::ball_to_space(unit), unit,
                         Relation::ImageInside};
  CHECK(image_containment(holds, 100000) == Verdict::Holds);
  ContainmentQuery fails{RationalBall{{rat(0)}, rat(1, 2)}, MapFamily::ball_to_space(unit),
                         RationalBall{{rat(0)}, rat(1, 2)}, Relation::ImageInside};
  CHECK(image_containment(fails, 100000) == Verdict::Fails);
  // identity at the shared boundary is not decidable at any budget
  ContainmentQuery boundary{unit, MapFamily::identity(1), unit, Relation::ImageInside};
  CHECK(image_containment(boundary, 100) == Verdict::Unknown);
  CHECK(image_containment(boundary, 100000) == Verdict::Unknown);
}

TEST_CASE("containment matches exact affine images and never flips") {
  std::mt19937 rng(17);
  auto rnd = [&](long lo, long hi) { return rat(lo + (long)(rng() % (hi - lo + 1)), 16); };
  for (int i = 0; i < 300; ++i) {
    Rat e = rat((long)(rng() % 30) + 1, 8);
    RatVec a{rnd(-40, 40), rnd(-40, 40)};
    RationalBall src{{rnd(-40, 40), rnd(-40, 40)}, rat((long)(rng() % 30) + 1, 8)};
    RationalBall tgt{{rnd(-40, 40), rnd(-40, 40)}, rat((long)(rng() % 60) + 1, 4)};
    MapFamily f = MapFamily::composition({MapFamily::scaling(e, 2), MapFamily::translation(a)});
    // exact image: B(e*c - a, e*r)
    RatVec ic{e * src.center[0] - a[0], e * src.center[1] - a[1]};
    Rat sum_sq = sq_dist(ic, tgt.center);
    Rat slack = tgt.radius - e * src.radius;
    bool inside = slack >= 0 && sum_sq <= slack * slack;      // closure inside closed target
    bool strict = slack > 0 && sum_sq < slack * slack;        // with margin
    if (!strict && inside) continue;                          // skip boundary ties
    ContainmentQuery q{src, f, tgt, Relation::ImageInside};
    std::set<Verdict> seen;
    for (Budget b : {100u, 1000u, 10000u, 100000u}) seen.insert(image_containment(q, b));
    CHECK(!(seen.count(Verdict::Holds) && seen.count(Verdict::Fails)));
    Verdict final = image_containment(q, 100000);
    if (final == Verdict::Holds) CHECK(inside);
    if (final == Verdict::Fails) CHECK(!inside);
  }
}
