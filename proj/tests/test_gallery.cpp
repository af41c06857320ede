#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctop/gallery.hpp"

using namespace ctop;

TEST_CASE("circle points from the rational parametrization are members") {
  auto C = gallery_circle();
  for (int i = -4; i <= 4; ++i) {
    RatVec p = circle_point(rat(i, 3));
    CHECK(on_unit_sphere(p));
    auto nm = point_name(C.balls, p);
    auto ws = query(nm, 150);
    CHECK(!ws.empty());
    for (auto& w : ws) CHECK(C.balls->member(w, p));
  }
}

TEST_CASE("stereographic charts take their textbook values") {
  auto S1 = gallery_sphere_stereo(1);
  const Chart* plus = S1.atlas->find(kChartStereoPlus);
  REQUIRE(plus);
  CHECK(*plus->value({rat(0), rat(-1)}) == RatVec{rat(0)});
  CHECK(*plus->value({rat(1), rat(0)}) == RatVec{rat(1)});
  CHECK(*plus->inverse_value({rat(0)}) == RatVec{rat(0), rat(-1)});
  CHECK(!plus->in_domain({rat(0), rat(1)}));
  auto S2 = gallery_sphere_stereo(2);
  const Chart* minus = S2.atlas->find(kChartStereoMinus);
  REQUIRE(minus);
  CHECK(*minus->value({rat(0), rat(0), rat(1)}) == RatVec({rat(0), rat(0)}));
  // separation of two sphere points through the induced space
  RatVec e{rat(1), rat(0)}, w{rat(-1), rat(0)};
  CHECK(separate_points(point_name(S1.balls, e), point_name(S1.balls, w), 20000));
}

TEST_CASE("punctured sphere has one chart missing exactly the pole") {
  auto P = gallery_punctured_sphere(1);
  REQUIRE(P.atlas->charts.size() == 1);
  RatVec south{rat(0), rat(-1)}, north{rat(0), rat(1)};
  Word w = ball_code_encode(kChartStereoPlus, ball_encode(RationalBall{{rat(0)}, rat(1, 2)}));
  CHECK(P.balls->member(w, south));
  CHECK(!P.balls->member(w, north));
  auto nm = point_name(P.balls, south);
  auto ws = query(nm, 100);
  CHECK(!ws.empty());
  for (auto& v : ws) CHECK(P.balls->member(v, south));
}

TEST_CASE("projective charts are scale invariant") {
  auto P2 = gallery_projective(2);
  const Chart* c0 = P2.atlas->find(nat_encode(mpz_class(0)));
  REQUIRE(c0);
  RatVec rep{rat(1), rat(2), rat(3)};
  CHECK(*c0->value(rep) == RatVec({rat(2), rat(3)}));
  RatVec scaled{rat(-2), rat(-4), rat(-6)};
  Word w = ball_code_encode(nat_encode(mpz_class(0)),
                            ball_encode(RationalBall{{rat(2), rat(3)}, rat(1, 4)}));
  CHECK(P2.balls->member(w, rep));
  CHECK(P2.balls->member(w, scaled));
  CHECK(!P2.balls->member(w, {rat(1), rat(2), rat(4)}));
  // the i-th chart misses lines with vanishing i-th coordinate
  const Chart* c2 = P2.atlas->find(nat_encode(mpz_class(2)));
  REQUIRE(c2);
  CHECK(!c2->in_domain({rat(1), rat(1), rat(0)}));
  auto nm = point_name(P2.balls, rep);
  for (auto& v : query(nm, 150)) CHECK(P2.balls->member(v, rep));
}

TEST_CASE("two origins: doubled charts agree away from zero only") {
  auto T = gallery_two_origins();
  CHECK(!T.atlas->hausdorff);
  RatVec o0{rat(0), rat(0)}, o1{rat(0), rat(1)};
  RatVec p0{rat(1), rat(0)}, p1{rat(1), rat(1)};
  Word near0 = ball_code_encode("0", ball_encode(RationalBall{{rat(0)}, rat(1, 4)}));
  Word near1 = ball_code_encode("1", ball_encode(RationalBall{{rat(0)}, rat(1, 4)}));
  CHECK(T.balls->member(near0, o0));
  CHECK(!T.balls->member(near0, o1));
  CHECK(T.balls->member(near0, {rat(1, 8), rat(0)}));
  CHECK(T.balls->member(near0, {rat(1, 8), rat(1)}));  // same point off the origin
  CHECK(!T.balls->disjoint(near0, near1, 100000));
  // the two origins themselves are separable from ordinary points...
  CHECK(separate_points(point_name(T.balls, o0), point_name(T.balls, p0), 20000));
  // ...but not from each other at any budget we care to spend
  CHECK(!separate_points(point_name(T.balls, o0), point_name(T.balls, o1), 100000));
  // the same point under either tag is never separated from itself
  CHECK(!separate_points(point_name(T.balls, p0), point_name(T.balls, p1), 20000));
}

TEST_CASE("torus embedding formulas and their inverse") {
  CHECK(torus_map_exact({rat(1), rat(0), rat(1), rat(0)}) == RatVec({rat(0), rat(2), rat(1)}));
  CHECK(torus_map_exact({rat(0), rat(1), rat(0), rat(1)}) == RatVec({rat(3), rat(0), rat(0)}));
  auto inv = torus_map_inverse_exact({rat(0), rat(2), rat(1)});
  REQUIRE(inv);
  CHECK(*inv == RatVec({rat(1), rat(0), rat(1), rat(0)}));
  // interval maps enclose the exact maps on sample points
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      RatVec u = circle_point(rat(i, 2)), v = circle_point(rat(j, 2));
      RatVec p{u[0], u[1], v[0], v[1]};
      RatVec q = torus_map_exact(p);
      auto img = torus_imap()(box_of_point(p), 40);
      REQUIRE(img);
      for (int d = 0; d < 3; ++d) CHECK((*img)[d].contains(q[d]));
      auto back = torus_inverse_imap()(box_of_point(q), 40);
      REQUIRE(back);
      for (int d = 0; d < 4; ++d) {
        CHECK((*back)[d].lo - pow2(-16) <= p[d]);
        CHECK((*back)[d].hi + pow2(-16) >= p[d]);
      }
    }
  // the product space names tagged torus points
  auto T = gallery_torus();
  RatVec xu{rat(1), rat(0)}, xv{rat(0), rat(1)};
  auto n = pair_point_names(T.space, point_name(T.u.balls, xu), point_name(T.v.balls, xv));
  auto ws = query(n, 300);
  CHECK(!ws.empty());
  for (auto& w : ws) CHECK(T.space->member(w, {rat(1), rat(0), rat(0), rat(1)}));
}

TEST_CASE("shifted line translates by a point given only by name") {
  auto R1 = euclidean_space(1);
  auto L = shifted_line(point_name(R1, {rat(1, 3)}));
  auto fwd = apply_translator(shifted_line_forward(L, R1), point_name(R1, {rat(2)}));
  auto tb = tightest_ball(fwd, 1, 5000);
  REQUIRE(tb);
  CHECK(abs(tb->center[0] - rat(5, 3)) < tb->radius);
  CHECK(tb->radius < pow2(-20));
  auto back = apply_translator(shifted_line_backward(L, R1), fwd);
  auto tb2 = tightest_ball(back, 1, 5000);
  REQUIRE(tb2);
  CHECK(abs(tb2->center[0] - rat(2)) < tb2->radius);
  CHECK(tb2->radius < pow2(-18));
}

TEST_CASE("pushforward transports membership along the inverse") {
  auto R1 = euclidean_space(1);
  auto P = pushforward_space(
      R1, [](const RatVec& p) { return RatVec{p[0] - 1}; }, "shifted");
  Word w = ball_encode(RationalBall{{rat(0)}, rat(1)});
  CHECK(P->member(w, {rat(3, 2)}));
  CHECK(!P->member(w, {rat(1, 2) + rat(2)}));
  auto nm = point_name(P, {rat(3, 2)});
  auto ws = query(nm, 100);
  CHECK(!ws.empty());
  for (auto& v : ws) CHECK(P->member(v, {rat(3, 2)}));
}
