#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctop/gallery.hpp"

using namespace ctop;

TEST_CASE("ball codes and the induced space semantics") {
  auto C = gallery_circle();
  Word good = ball_code_encode(kChartFPlus, ball_encode(RationalBall{{rat(0)}, rat(1, 2)}));
  CHECK(C.balls->dom(good));
  CHECK(C.balls->member(good, {rat(0), rat(1)}));
  CHECK(!C.balls->member(good, {rat(0), rat(-1)}));  // wrong half
  // nonempty is exactly decidable for the gallery charts
  CHECK(C.balls->nonempty(good, 1));
  Word off_image = ball_code_encode(kChartFPlus, ball_encode(RationalBall{{rat(5)}, rat(1)}));
  CHECK(!C.balls->nonempty(off_image, 1));
  Word no_chart = ball_code_encode("0000", ball_encode(RationalBall{{rat(0)}, rat(1, 2)}));
  CHECK(!C.balls->nonempty(no_chart, 1));
  // enumeration covers the whole code domain, including junk chart ids
  bool saw_junk = false;
  for (std::uint64_t k = 0; k < 400; ++k) {
    Word w = C.balls->enumerate(k);
    CHECK(C.balls->dom(w));
    auto c = ball_code_decode(w, 1);
    if (!C.atlas->find(c->chart)) saw_junk = true;
  }
  CHECK(saw_junk);
}

TEST_CASE("chart evaluation and transitions match closed forms") {
  auto R1 = euclidean_space(1);
  auto C = gallery_circle();
  auto p01 = point_name(C.balls, {rat(0), rat(1)});
  auto f = apply_translator(chart_forward(C.atlas, R1, kChartFPlus), p01);
  auto tb = tightest_ball(f, 1, 120);
  REQUIRE(tb);
  CHECK(abs(tb->center[0]) < tb->radius);
  CHECK(tb->radius < pow2(-16));

  auto d35 = point_name(R1, {rat(3, 5)});
  auto bk = apply_translator(chart_backward(C.atlas, C.balls, kChartFPlus), d35);
  auto ws = query(bk, 100);
  CHECK(!ws.empty());
  for (auto& w : ws) CHECK(C.balls->member(w, {rat(3, 5), rat(4, 5)}));

  auto tr = apply_translator(transition_translator(C.atlas, R1, kChartFPlus, kChartGPlus), d35);
  auto tb2 = tightest_ball(tr, 1, 150);
  REQUIRE(tb2);
  CHECK(abs(tb2->center[0] - rat(4, 5)) < tb2->radius);
  CHECK(tb2->radius < pow2(-20));

  auto S2 = gallery_sphere_stereo(2);
  auto R2 = euclidean_space(2);
  auto y20 = point_name(R2, {rat(2), rat(0)});
  auto str = apply_translator(
      transition_translator(S2.atlas, R2, kChartStereoPlus, kChartStereoMinus), y20);
  auto tb3 = tightest_ball(str, 2, 150);
  REQUIRE(tb3);
  CHECK(sq_dist(tb3->center, {rat(1, 2), rat(0)}) < tb3->radius * tb3->radius);
}

TEST_CASE("cross-chart subset and disjointness certificates") {
  auto C = gallery_circle();
  Word cu = ball_code_encode(kChartFPlus, ball_encode(RationalBall{{rat(0)}, rat(1, 2)}));
  Word cv = ball_code_encode(kChartFMinus, ball_encode(RationalBall{{rat(0)}, rat(1, 2)}));
  CHECK(C.balls->disjoint(cu, cv, 2000));
  Word cf = ball_code_encode(kChartFPlus, ball_encode(RationalBall{{rat(1, 2)}, rat(1, 4)}));
  Word cg = ball_code_encode(kChartGPlus, ball_encode(RationalBall{{rat(1, 2)}, rat(1, 4)}));
  CHECK(!C.balls->disjoint(cf, cg, 4000));
  Word small_f = ball_code_encode(kChartFPlus, ball_encode(RationalBall{{rat(1, 2)}, rat(1, 8)}));
  Word big_g = ball_code_encode(kChartGPlus, ball_encode(RationalBall{{rat(3, 4)}, rat(1, 5)}));
  CHECK(C.balls->subset_cert(small_f, big_g, 20000));
  CHECK(!C.balls->subset_cert(big_g, small_f, 2000));
}

TEST_CASE("compatibility certification and its negative control") {
  auto C = gallery_circle();
  auto S1 = gallery_sphere_stereo(1);
  auto amb = sphere_subspace(1);
  auto t_ab = compose(atlas_to_ambient(C.atlas, amb), ambient_to_atlas(S1.atlas, S1.balls));
  auto t_ba = compose(atlas_to_ambient(S1.atlas, amb), ambient_to_atlas(C.atlas, C.balls));
  std::vector<RatVec> samples;
  for (int i = 1; i <= 8; ++i) samples.push_back(circle_point(rat(i, 9)));
  auto rep = compatibility_certificate(C.balls, S1.balls, t_ab, t_ba, samples, 300);
  CHECK(rep.passed());
  Translator bad{Discipline::PointDelta, Discipline::PointDelta, S1.balls.get(),
                 [](const Name& nmx, Budget b) {
                   std::vector<Word> o;
                   for (auto& w : query(nmx, b)) {
                     auto c = ball_code_decode(w, 1);
                     if (c)
                       o.push_back(ball_code_encode(c->chart == "0" ? Word("1") : Word("0"),
                                                    c->ball));
                   }
                   return o;
                 }};
  CHECK(!compatibility_certificate(C.balls, S1.balls, bad, t_ba, samples, 300).passed());
}

TEST_CASE("ball-image refinement rewrites codes both ways") {
  auto C = gallery_circle();
  std::vector<BallCode> sel{{kChartFPlus, ball_encode(RationalBall{{rat(0)}, rat(3, 4)})},
                            {kChartFMinus, ball_encode(RationalBall{{rat(0)}, rat(3, 4)})},
                            {kChartGPlus, ball_encode(RationalBall{{rat(0)}, rat(3, 4)})},
                            {kChartGMinus, ball_encode(RationalBall{{rat(0)}, rat(3, 4)})}};
  auto R = refine_atlas(C.atlas, C.balls, sel, false);
  CHECK(R.atlas->charts.size() == 4);
  RatVec x{rat(0), rat(1)};
  auto nx = point_name(C.balls, x);
  auto rx = apply_translator(R.to_refined, nx);
  auto rspace = manifold_space(R.atlas);
  auto ws = query(rx, 200);
  CHECK(!ws.empty());
  for (auto& w : ws) CHECK(rspace->member(w, x));
  auto back = apply_translator(R.from_refined, rx);
  auto bs = query(back, 200);
  CHECK(!bs.empty());
  for (auto& w : bs) CHECK(C.balls->member(w, x));
}

TEST_CASE("full-space refinement gives charts onto all of R^n") {
  auto C = gallery_circle();
  std::vector<BallCode> sel{{kChartFPlus, ball_encode(RationalBall{{rat(0)}, rat(3, 4)})}};
  auto R = refine_atlas(C.atlas, C.balls, sel, true);
  REQUIRE(R.atlas->charts.size() == 1);
  const Chart& ch = R.atlas->charts[0];
  CHECK(ch.ball_in_image(RationalBall{{rat(1000)}, rat(5)}));
  RatVec x{rat(0), rat(1)};  // chart value 0 -> h_z(0) = 0
  auto v = ch.value(x);
  REQUIRE(v);
  CHECK((*v)[0] == 0);
  auto nx = point_name(C.balls, x);
  auto rx = apply_translator(R.to_refined, nx);
  auto rspace = manifold_space(R.atlas);
  auto ws = query(rx, 150);
  CHECK(!ws.empty());
  for (auto& w : ws) CHECK(rspace->member(w, x));
  auto back = apply_translator(R.from_refined, rx);
  bool sound = true, nonempty = false;
  for (auto& w : query(back, 3000)) {
    nonempty = true;
    sound = sound && C.balls->member(w, x);
  }
  CHECK(nonempty);
  CHECK(sound);
}

TEST_CASE("open submanifold restriction and its exterior silence") {
  auto E = gallery_euclidean(1);
  Word w01 = ball_code_encode("1", ball_encode(RationalBall{{rat(1, 2)}, rat(1, 2)}));
  auto W = theta_from_codes(E.balls, {w01});
  auto sub = open_submanifold(E.atlas, E.balls, W);
  auto xin = point_name(E.balls, {rat(1, 2)});
  auto rn = apply_translator(sub.restrict_name, xin);
  auto rws = query(rn, 400);
  CHECK(!rws.empty());
  for (auto& w : rws) CHECK(sub.space->member(w, {rat(1, 2)}));
  CHECK(query(apply_translator(sub.restrict_name, point_name(E.balls, {rat(2)})), 2000).empty());
  // unrestrict recovers ambient codes
  auto un = apply_translator(sub.unrestrict, rn);
  auto us = query(un, 400);
  CHECK(!us.empty());
  for (auto& w : us) CHECK(E.balls->member(w, {rat(1, 2)}));
  // restricted codes separate within W
  auto yn = apply_translator(sub.restrict_name, point_name(E.balls, {rat(1, 4)}));
  auto zn = apply_translator(sub.restrict_name, point_name(E.balls, {rat(3, 4)}));
  CHECK(separate_points(yn, zn, 30000));
}
