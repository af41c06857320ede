#pragma once

// End-to-end property checks over the whole stack, shared by the acceptance
// binary and the CLI `selftest` verb.  Every check is deterministic (fixed
// seeds) and reports pass/fail plus wall time.

#include <chrono>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "ctop/embed.hpp"

namespace ctop {

struct CheckResult {
  int number = 0;
  std::string title;
  bool passed = false;
  double seconds = 0;
  std::string detail;
};

namespace selftest_detail {

using Clock = std::chrono::steady_clock;

inline Rat random_rat(std::mt19937_64& rng, long num_range, long max_den) {
  long num = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
  long den = static_cast<long>(rng() % max_den) + 1;
  return rat(num, den);
}

// 1. every codec round-trips bit-exactly
inline bool check_codecs(std::string& detail) {
  std::mt19937_64 rng(1);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    std::size_t len = rng() % 13;
    Word w;
    for (std::size_t k = 0; k < len; ++k) w += kAlphabet[rng() % kAlphabetSize];
    auto parts = scan_wrapped(wrap(w));
    if (parts.size() != 1 || parts[0] != w) ++failures;
    Rat q = random_rat(rng, 100000, 9999);
    auto qb = rat_decode(rat_encode(q));
    if (!qb || *qb != q) ++failures;
    mpz_class n = static_cast<unsigned long>(rng() % 1000000);
    auto nb = nat_decode(nat_encode(n));
    if (!nb || *nb != n) ++failures;
    RationalBall ball{{random_rat(rng, 50, 20), random_rat(rng, 50, 20)},
                      rat(static_cast<long>(rng() % 99) + 1, 100)};
    auto bb = ball_decode(ball_encode(ball), 2);
    if (!bb || bb->center != ball.center || bb->radius != ball.radius) ++failures;
    auto lb = parse_ball_literal(ball_literal(ball));
    if (!lb || lb->center != ball.center || lb->radius != ball.radius) ++failures;
  }
  std::vector<Word> members;
  Word blob;
  for (int i = 0; i < 1000; ++i) {
    members.push_back(enumerate_word(rng() % 5000));
    blob += wrap(members.back());
  }
  if (scan_wrapped(blob) != members) ++failures;
  detail = std::to_string(failures) + " failures over 10000 words + 1000-block scan";
  return failures == 0;
}

// 2. point names are sound and list the canonical small witness ball
inline bool check_point_names(std::string& detail) {
  std::mt19937_64 rng(2);
  auto R2 = euclidean_space(2);
  int bad = 0, missing = 0;
  for (int i = 0; i < 100; ++i) {
    RatVec q{random_rat(rng, 800, 64), random_rat(rng, 800, 64)};
    auto nm = point_name(R2, q);
    Word witness = ball_encode(RationalBall{q, pow2(-8)});
    bool found = false;
    for (const Word& w : query(nm, 1000)) {
      auto b = ball_decode(w, 2);
      if (!b || !ball_contains(*b, q)) ++bad;
      if (w == witness) found = true;
    }
    if (!found) {
      auto ws = query(nm, 10000);
      found = std::find(ws.begin(), ws.end(), witness) != ws.end();
    }
    if (!found) ++missing;
  }
  detail = std::to_string(bad) + " unsound listings, " + std::to_string(missing) +
           " missing witnesses over 100 points";
  return bad == 0 && missing == 0;
}

// 3. fast-converging sequence names and ball names translate both ways
inline bool check_cauchy_round_trip(std::string& detail) {
  std::mt19937_64 rng(3);
  auto R1 = euclidean_space(1);
  int failures = 0;
  for (int i = 0; i < 50; ++i) {
    RatVec q{random_rat(rng, 1000, 64)};
    auto d = cauchy_to_delta(R1, cauchy_from_rational(q));
    auto ents = cauchy_entries(delta_to_cauchy(d, 1), 4000);
    if (ents.size() < 21) {
      ++failures;
      continue;
    }
    for (std::size_t k = 0; k <= 20; ++k)
      if (abs(ents[k][0] - q[0]) >= pow2(-static_cast<long>(k))) ++failures;
  }
  detail = std::to_string(failures) + " failures over 50 points, 21 entries each";
  return failures == 0;
}

// 4. the containment oracle agrees with exactly computable images
inline bool check_containment_oracle(std::string& detail) {
  std::mt19937_64 rng(4);
  auto rnd16 = [&](long lo, long hi) {
    return rat(lo + static_cast<long>(rng() % (hi - lo + 1)), 16);
  };
  int disagreements = 0, flips = 0, stuck = 0, affine_done = 0;
  for (int i = 0; i < 1000; ++i) {
    Rat e = rat(static_cast<long>(rng() % 30) + 1, 8);
    RatVec a{rnd16(-40, 40), rnd16(-40, 40)};
    RationalBall src{{rnd16(-40, 40), rnd16(-40, 40)}, rat(static_cast<long>(rng() % 30) + 1, 8)};
    RationalBall tgt{{rnd16(-40, 40), rnd16(-40, 40)}, rat(static_cast<long>(rng() % 60) + 1, 4)};
    MapFamily f = MapFamily::composition({MapFamily::scaling(e, 2), MapFamily::translation(a)});
    RatVec ic{e * src.center[0] - a[0], e * src.center[1] - a[1]};
    Rat sum_sq = sq_dist(ic, tgt.center);
    Rat slack = tgt.radius - e * src.radius;
    bool inside = slack >= 0 && sum_sq <= slack * slack;
    bool strict = slack > 0 && sum_sq < slack * slack;
    if (!strict && inside) continue;  // boundary tie: legitimately undecidable
    ContainmentQuery q{src, f, tgt, Relation::ImageInside};
    std::set<Verdict> seen;
    for (Budget b : {100u, 1000u, 10000u, 100000u}) seen.insert(image_containment(q, b));
    if (seen.count(Verdict::Holds) && seen.count(Verdict::Fails)) ++flips;
    Verdict final = image_containment(q, 100000);
    if ((final == Verdict::Holds && !inside) || (final == Verdict::Fails && inside))
      ++disagreements;
    ++affine_done;
  }
  // nonlinear queries with a built-in margin must reach a definite answer
  for (int i = 0; i < 200; ++i) {
    Rat c = rnd16(-32, 32);
    Rat r = rat(static_cast<long>(rng() % 16) + 4, 8);  // in [1/2, 19/8]
    RationalBall w{{c}, r};
    Rat s = rat(static_cast<long>(rng() % 21) - 10, 16);  // in [-5/8, 5/8]
    Rat rx = r / 32;
    RationalBall x{{c + r * s}, rx};
    MapFamily hw = MapFamily::ball_to_space(w);
    Rat lo = (*map_exact(hw, {x.center[0] - rx}))[0];
    Rat hi = (*map_exact(hw, {x.center[0] + rx}))[0];
    bool want_holds = (i % 2 == 0);
    Rat radius = (hi - lo) / 2 + (want_holds ? pow2(-9) : -pow2(-9));
    ContainmentQuery q{x, hw, RationalBall{{(lo + hi) / 2}, radius}, Relation::ImageInside};
    Verdict got = Verdict::Unknown;
    for (Budget b : {100u, 1000u, 10000u, 100000u})
      if ((got = image_containment(q, b)) != Verdict::Unknown) break;
    if (got == Verdict::Unknown) ++stuck;
    else if ((got == Verdict::Holds) != want_holds) ++disagreements;
  }
  std::ostringstream os;
  os << disagreements << " disagreements, " << flips << " verdict flips over " << affine_done
     << " affine queries; " << stuck << " of 200 margin queries undecided";
  detail = os.str();
  return disagreements == 0 && flips == 0 && stuck == 0;
}

// 5. separation certificates in the plane are exact, equal points never split
inline bool check_separation(std::string& detail) {
  std::mt19937_64 rng(5);
  auto R2 = euclidean_space(2);
  int failures = 0, false_splits = 0;
  for (int i = 0; i < 100; ++i) {
    RatVec p{random_rat(rng, 40, 8), random_rat(rng, 40, 8)};
    RatVec q{random_rat(rng, 40, 8), random_rat(rng, 40, 8)};
    if (p == q) q[0] += rat(1, 8);
    auto sep = separate_points(point_name(R2, p), point_name(R2, q), 10000);
    if (!sep) {
      ++failures;
      continue;
    }
    auto bu = ball_decode(sep->first, 2), bv = ball_decode(sep->second, 2);
    if (!bu || !bv || !ball_disjoint(*bu, *bv) || !ball_contains(*bu, p) ||
        !ball_contains(*bv, q))
      ++failures;
  }
  for (int i = 0; i < 3; ++i) {
    RatVec p{rat(i), rat(-i)};
    if (separate_points(point_name(R2, p), point_name(R2, p), 10000)) ++false_splits;
  }
  detail = std::to_string(failures) + " failed pairs of 100, " + std::to_string(false_splits) +
           " equal-point false separations";
  return failures == 0 && false_splits == 0;
}

// 6. circle chart machines track the analytic formulas
inline bool check_circle_charts(std::string& detail) {
  auto C = gallery_circle();
  auto R1 = euclidean_space(1);
  struct Overlap {
    Word src, dst;
    int src_axis, dst_axis;
    Rat t_lo, t_hi;  // parameter range inside both domains
  };
  std::vector<Overlap> overlaps{
      {kChartFPlus, kChartGPlus, 0, 1, rat(1, 100), rat(99, 100)},
      {kChartFPlus, kChartGMinus, 0, 1, rat(101, 100), rat(4)},
      {kChartFMinus, kChartGPlus, 0, 1, rat(-99, 100), rat(-1, 100)},
      {kChartFMinus, kChartGMinus, 0, 1, rat(-4), rat(-101, 100)}};
  int bad_transition = 0, bad_round = 0;
  for (const Overlap& o : overlaps) {
    auto tr = transition_translator(C.atlas, R1, o.src, o.dst);
    auto fwd = chart_forward(C.atlas, R1, o.src);
    auto bwd = chart_backward(C.atlas, C.balls, o.src);
    for (int k = 0; k < 50; ++k) {
      Rat t = o.t_lo + (o.t_hi - o.t_lo) * rat(k, 49);
      RatVec p = circle_point(t);
      Rat sv = p[o.src_axis], dv = p[o.dst_axis];
      auto tb = tightest_ball(apply_translator(tr, point_name(R1, {sv})), 1, 200);
      if (!tb || abs(tb->center[0] - dv) >= tb->radius + pow2(-20) || tb->radius >= pow2(-20))
        ++bad_transition;
      auto round = apply_translator(fwd, apply_translator(bwd, point_name(R1, {sv})));
      auto rb = tightest_ball(round, 1, 200);
      if (!rb || abs(rb->center[0] - sv) >= rb->radius + pow2(-16) || rb->radius >= pow2(-16))
        ++bad_round;
    }
  }
  detail = std::to_string(bad_transition) + " transition misses, " + std::to_string(bad_round) +
           " round-trip misses over 4x50 samples";
  return bad_transition == 0 && bad_round == 0;
}

// 7. half-chart and stereographic circle structures certify as compatible
inline bool check_compatibility(std::string& detail) {
  auto C = gallery_circle();
  auto S1 = gallery_sphere_stereo(1);
  auto amb = sphere_subspace(1);
  auto t_ab = compose(atlas_to_ambient(C.atlas, amb), ambient_to_atlas(S1.atlas, S1.balls));
  auto t_ba = compose(atlas_to_ambient(S1.atlas, amb), ambient_to_atlas(C.atlas, C.balls));
  std::vector<RatVec> samples;
  for (int i = 1; i <= 25; ++i) samples.push_back(circle_point(rat(2 * i - 26, 9)));
  auto rep = compatibility_certificate(C.balls, S1.balls, t_ab, t_ba, samples, 300);
  Translator corrupted{Discipline::PointDelta, Discipline::PointDelta, S1.balls.get(),
                       [](const Name& nm, Budget b) {
                         std::vector<Word> out;
                         for (auto& w : query(nm, b)) {
                           auto c = ball_code_decode(w, 1);
                           if (c)
                             out.push_back(ball_code_encode(
                                 c->chart == "0" ? Word("1") : Word("0"), c->ball));
                         }
                         return out;
                       }};
  bool control_flagged =
      !compatibility_certificate(C.balls, S1.balls, corrupted, t_ba, samples, 300).passed();
  detail = std::string(rep.passed() ? "certified" : "NOT certified") + " on 25 samples; control " +
           (control_flagged ? "flagged" : "NOT flagged");
  return rep.passed() && control_flagged;
}

// 8. restriction to (0,1): interior points restrict, the exterior is silent
inline bool check_open_restriction(std::string& detail) {
  auto E = gallery_euclidean(1);
  Word w01 = ball_code_encode("1", ball_encode(RationalBall{{rat(1, 2)}, rat(1, 2)}));
  auto sub = open_submanifold(E.atlas, E.balls, theta_from_codes(E.balls, {w01}));
  int failures = 0;
  for (int i = 1; i <= 20; ++i) {
    RatVec p{rat(i, 21)};
    auto rn = apply_translator(sub.restrict_name, point_name(E.balls, p));
    auto ws = query(rn, 400);
    if (ws.empty()) ++failures;
    for (auto& w : ws)
      if (!sub.space->member(w, p)) ++failures;
  }
  bool silent =
      query(apply_translator(sub.restrict_name, point_name(E.balls, {rat(2)})), 100000).empty();
  detail = std::to_string(failures) + " interior failures of 20; exterior " +
           (silent ? "silent" : "NOT silent") + " at budget 100000";
  return failures == 0 && silent;
}

// 9. the compact embeddings: circle into R^8, torus into R^3
inline bool check_embeddings(std::string& detail) {
  std::mt19937_64 rng(9);
  auto circle = gallery_circle();
  Embedding E = circle_embedding(circle);
  std::vector<RatVec> pool;
  for (int k = 0; k < 50; ++k) pool.push_back(circle_point(rat(k, 25) - 1));
  std::vector<std::optional<Name>> images(pool.size());
  auto image_of = [&](std::size_t i) -> const Name& {
    if (!images[i])
      images[i] = apply_translator(E.forward, point_name(circle.balls, pool[i]));
    return *images[i];
  };
  int unseparated = 0;
  std::set<std::size_t> used;
  for (int k = 0; k < 50; ++k) {
    std::size_t i = rng() % pool.size(), j = rng() % pool.size();
    if (i == j) j = (j + 1) % pool.size();
    used.insert(i);
    used.insert(j);
    bool ok = false;
    for (Budget b : {48u, 96u, 192u}) {
      auto bi = tightest_ball(image_of(i), E.out_dim, b);
      auto bj = tightest_ball(image_of(j), E.out_dim, b);
      if (bi && bj && bi->radius <= pow2(-12) && bj->radius <= pow2(-12) &&
          ball_disjoint(*bi, *bj)) {
        ok = true;
        break;
      }
    }
    if (!ok) ++unseparated;
  }
  int bad_round = 0;
  for (std::size_t i : used) {
    auto back = apply_translator(E.inverse, image_of(i));
    bool sound = true, tight = false;
    // points recoding near a chart-ball boundary pass close to the sphere
    // pole, where the inverse needs a deeper prefix to tighten
    for (Budget b : {40u, 80u}) {
      for (const Word& w : query(back, b)) {
        if (!circle.balls->member(w, pool[i])) sound = false;
        auto c = ball_code_decode(w, 1);
        std::optional<RationalBall> ball;
        if (c) ball = ball_decode(c->ball, 1);
        if (ball && ball->radius <= pow2(-12)) tight = true;
      }
      if (!sound || tight) break;
    }
    if (!sound || !tight) ++bad_round;
  }
  bool torus_ok =
      torus_map_exact({rat(1), rat(0), rat(1), rat(0)}) == RatVec({rat(0), rat(2), rat(1)}) &&
      torus_map_exact({rat(0), rat(1), rat(0), rat(1)}) == RatVec({rat(3), rat(0), rat(0)});
  TorusInstance T = gallery_torus();
  auto tf = apply_translator(torus_embedding_forward(T, euclidean_space(3)),
                             point_name(T.space, {rat(1), rat(0), rat(1), rat(0)}));
  auto ttb = tightest_ball(tf, 3, 48);
  torus_ok = torus_ok && ttb && ball_contains(*ttb, {rat(0), rat(2), rat(1)}) &&
             ttb->radius < pow2(-12);
  std::ostringstream os;
  os << unseparated << " unseparated pairs of 50, " << bad_round << " round-trip failures over "
     << used.size() << " points; torus map " << (torus_ok ? "exact" : "WRONG");
  detail = os.str();
  return unseparated == 0 && bad_round == 0 && torus_ok;
}

// 10. the doubled origin never separates; ordinary points do
inline bool check_two_origins(std::string& detail) {
  auto T = gallery_two_origins();
  auto origin0 = point_name(T.balls, {rat(0), rat(0)});
  auto origin1 = point_name(T.balls, {rat(0), rat(1)});
  bool still_unknown = !separate_points(origin0, origin1, 1000000);
  int failures = 0;
  std::vector<std::pair<RatVec, RatVec>> ordinary{
      {{rat(1), rat(0)}, {rat(2), rat(0)}},
      {{rat(-1, 2), rat(0)}, {rat(1, 2), rat(1)}},
      {{rat(1, 3), rat(1)}, {rat(0), rat(0)}}};
  for (auto& [p, q] : ordinary) {
    auto sep = separate_points(point_name(T.balls, p), point_name(T.balls, q), 10000);
    if (!sep || !T.balls->disjoint(sep->first, sep->second, 1)) ++failures;
  }
  detail = std::string("origins ") + (still_unknown ? "unseparated" : "SEPARATED") +
           " at budget 1000000; " + std::to_string(failures) + " ordinary-pair failures of 3";
  return still_unknown && failures == 0;
}

}  // namespace selftest_detail

inline std::vector<CheckResult> run_selftest() {
  using namespace selftest_detail;
  struct Entry {
    const char* title;
    bool (*fn)(std::string&);
  };
  const Entry entries[] = {
      {"codec round trips", check_codecs},
      {"point-name soundness and witness balls", check_point_names},
      {"sequence/ball name translation", check_cauchy_round_trip},
      {"containment oracle cross-check", check_containment_oracle},
      {"planar separation certificates", check_separation},
      {"circle charts vs closed forms", check_circle_charts},
      {"atlas compatibility certification", check_compatibility},
      {"open restriction and exterior silence", check_open_restriction},
      {"compact embeddings", check_embeddings},
      {"doubled-origin non-separation", check_two_origins},
  };
  std::vector<CheckResult> out;
  int k = 0;
  for (const Entry& e : entries) {
    CheckResult r;
    r.number = ++k;
    r.title = e.title;
    auto t0 = Clock::now();
    r.passed = e.fn(r.detail);
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    out.push_back(std::move(r));
  }
  return out;
}

// Prints one line per check; returns the number of failures.
inline int report_selftest(std::ostream& os) {
  int failed = 0;
  for (const CheckResult& r : run_selftest()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", r.seconds);
    os << "check " << r.number << " [" << r.title << "]: " << (r.passed ? "pass" : "FAIL")
       << " (" << buf << ") - " << r.detail << "\n";
    if (!r.passed) ++failed;
  }
  return failed;
}

}  // namespace ctop
