#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ctop/euclid.hpp"

using namespace ctop;

TEST_CASE("intersection and disjointness witness schedules engage") {
  auto R1 = euclidean_space(1);
  bool found_s = false, found_h = false;
  for (std::uint64_t k = 0; k < 5000 && !(found_s && found_h); ++k) {
    if (auto s = s_triple(*R1, k)) {
      auto u = ball_decode((*s)[0], 1), v = ball_decode((*s)[1], 1), w = ball_decode((*s)[2], 1);
      CHECK(ball_subset(*w, *u));
      CHECK(ball_subset(*w, *v));
      found_s = true;
    }
    if (auto h = h_pair(*R1, k)) {
      CHECK(ball_disjoint(*ball_decode(h->first, 1), *ball_decode(h->second, 1)));
      found_h = true;
    }
  }
  CHECK(found_s);
  CHECK(found_h);
}

TEST_CASE("theta intersection lists only certified sub-balls") {
  auto R1 = euclidean_space(1);
  auto a = theta_from_codes(R1, {ball_encode(RationalBall{{rat(0)}, rat(1)})});
  auto b = theta_from_codes(R1, {ball_encode(RationalBall{{rat(1, 2)}, rat(1)})});
  auto cap = intersect_theta(R1, a, b);
  auto ws = query(cap, 4000);
  CHECK(!ws.empty());
  for (auto& w : ws) {
    auto ball = ball_decode(w, 1);
    REQUIRE(ball);
    CHECK(ball->center[0] - ball->radius >= rat(-1, 2));
    CHECK(ball->center[0] + ball->radius <= rat(3, 2));
  }
  // a shared point is eventually confirmed via the intersection name
  CHECK(member_semidecide(point_name(R1, {rat(1, 4)}), cap, 4000).confirmed);
}

TEST_CASE("product space pairs codes and points componentwise") {
  auto R1 = euclidean_space(1);
  auto P = product_space(R1, R1);
  auto n = pair_point_names(P, point_name(R1, {rat(1)}), point_name(R1, {rat(2)}));
  auto ws = query(n, 200);
  CHECK(!ws.empty());
  for (auto& w : ws) CHECK(P->member(w, {rat(1), rat(2)}));
  auto pr = project_point_name(R1, n, 1);
  for (auto& w : query(pr, 100)) CHECK(R1->member(w, {rat(2)}));
  CHECK(separate_points(n, pair_point_names(P, point_name(R1, {rat(1)}), point_name(R1, {rat(3)})),
                        20000));
}

TEST_CASE("predicate subbase induces the finite-intersection space") {
  auto R1 = euclidean_space(1);
  PredicateSpace Z{R1};
  auto X = induce_from_predicate(Z);
  // empty intersection denotes the whole carrier
  CHECK(X->member("", {rat(100)}));
  Word u = tuple({ball_encode(RationalBall{{rat(0)}, rat(1)}),
                  ball_encode(RationalBall{{rat(1, 2)}, rat(1)})});
  CHECK(X->dom(u));
  CHECK(X->member(u, {rat(1, 4)}));
  CHECK(!X->member(u, {rat(-3, 4)}));
  auto nz = point_name(R1, {rat(1, 4)});
  auto ni = apply_translator(predicate_to_induced(X), nz);
  for (auto& w : query(ni, 150)) CHECK(X->member(w, {rat(1, 4)}));
  auto nb = apply_translator(induced_to_predicate(R1), ni);
  for (auto& w : query(nb, 150)) CHECK(R1->member(w, {rat(1, 4)}));
  CHECK(!query(ni, 100).empty());
}

TEST_CASE("subspace keeps certificates and restricts membership") {
  auto R1 = euclidean_space(1);
  auto S = subspace(R1, [](const RatVec& p) { return p[0] >= 0; }, "halfline");
  Word w = ball_encode(RationalBall{{rat(0)}, rat(1)});
  CHECK(S->member(w, {rat(1, 2)}));
  CHECK(!S->member(w, {rat(-1, 2)}));
}

TEST_CASE("compact interval: cover names and complement machine") {
  auto R1 = euclidean_space(1);
  // K = [0,1] inside bound [-2,2]
  CompactRegion K{Box{{rat(-2), rat(2)}},
                  [](const Box& b) { return b[0].hi < 0 || b[0].lo > 1; }};
  std::vector<std::vector<Word>> seeds{
      {ball_encode(RationalBall{{rat(1, 2)}, rat(3, 4)})},
      {ball_encode(RationalBall{{rat(0)}, rat(3, 4)}), ball_encode(RationalBall{{rat(1)}, rat(3, 4)})}};
  auto kn = kappa_name(R1, K, seeds);
  auto covers = query(kn, 400);
  REQUIRE(!covers.empty());
  for (auto& c : covers) {
    // every listed cover really covers [0,1]: check at rational sample points
    for (int i = 0; i <= 16; ++i) {
      Rat x = rat(i, 16);
      bool in = false;
      for (const Word& m : scan_wrapped(c))
        if (ball_contains(*ball_decode(m, 1), {x})) in = true;
      CHECK(in);
    }
  }
  auto comp = compact_complement(R1, kn);
  CHECK(member_semidecide(point_name(R1, {rat(2)}), comp, 3000).confirmed);
  CHECK(member_semidecide(point_name(R1, {rat(-1)}), comp, 3000).confirmed);
  CHECK(!member_semidecide(point_name(R1, {rat(1, 2)}), comp, 3000).confirmed);
  for (auto& w : query(comp, 1000)) {
    auto b = ball_decode(w, 1);
    REQUIRE(b);
    CHECK((b->center[0] + b->radius <= 0 || b->center[0] - b->radius >= 1));
  }
}

TEST_CASE("psi-minus and kappa unions") {
  auto R1 = euclidean_space(1);
  Word far_ball = ball_encode(RationalBall{{rat(10)}, rat(1)});
  auto a = Name{Discipline::ClosedPsiMinus, R1.get(),
                [far_ball](Budget b) { return b ? std::vector<Word>{far_ball} : std::vector<Word>{}; }};
  auto u = union_psi_minus(R1, a, a);
  auto ws = query(u, 50);
  REQUIRE(!ws.empty());
  CHECK(ws[0] == far_ball);
}
