#pragma once

// Concrete computable manifolds: euclidean identity atlas, the circle with
// four half-charts, spheres with stereographic charts, projective spaces,
// the torus, the line with two origins, punctured spheres, and the shifted
// line.  Each instance ships its effective ball-space and the translators
// tying it to the euclidean subspace structure it is equivalent to.

#include "ctop/manifold.hpp"

namespace ctop {

struct ManifoldInstance {
  AtlasPtr atlas;
  SpacePtr balls;    // the effective space of computable balls
  SpacePtr ambient;  // the equivalent euclidean/subspace structure, if any
};

// --- generic equivalence translators --------------------------------------

// delta over the atlas ball-space -> delta over the ambient subspace: each
// listed <i,w> yields an ambient enclosure of phi_i^{-1}(mu(w)).
inline Translator atlas_to_ambient(AtlasPtr A, SpacePtr ambient) {
  std::size_t n = A->n;
  return Translator{Discipline::PointDelta, Discipline::PointDelta, ambient.get(),
                    [A, ambient, n](const Name& nm, Budget b) {
                      std::vector<Word> out;
                      auto ws = query(nm, b);
                      for (std::size_t t = 0; t < ws.size(); ++t) {
                        auto c = ball_code_decode(ws[t], n);
                        if (!c) continue;
                        const Chart* ch = A->find(c->chart);
                        auto ball = ball_decode(c->ball, n);
                        if (!ch || !ball || !ch->ball_in_image(*ball)) continue;
                        long prec = 16 + static_cast<long>(t);
                        auto amb = ch->backward_box(ball_box(*ball), prec);
                        if (amb) out.push_back(ball_encode(circumscribe(*amb, prec)));
                      }
                      return dedup_listing(std::move(out));
                    }};
}

// delta over the ambient subspace -> delta over the atlas ball-space: an
// ambient ball certified inside a chart domain yields a chart-ball code.
inline Translator ambient_to_atlas(AtlasPtr A, SpacePtr mspace) {
  std::size_t n = A->n;
  std::size_t amb_dim = A->ambient_dim;
  return Translator{Discipline::PointDelta, Discipline::PointDelta, mspace.get(),
                    [A, mspace, n, amb_dim](const Name& nm, Budget b) {
                      std::vector<Word> out;
                      auto ws = query(nm, b);
                      for (std::size_t t = 0; t < ws.size(); ++t) {
                        auto ball = ball_decode(ws[t], amb_dim);
                        if (!ball) continue;
                        Box bx = ball_box(*ball);
                        long prec = 16 + static_cast<long>(t);
                        for (const Chart& ch : A->charts) {
                          if (!ch.box_in_domain || !ch.box_in_domain(bx)) continue;
                          auto img = ch.forward_box(bx, prec);
                          if (!img) continue;
                          RationalBall c = circumscribe(*img, prec);
                          if (ch.ball_in_image(c))
                            out.push_back(ball_code_encode(ch.id, ball_encode(c)));
                        }
                      }
                      return dedup_listing(std::move(out));
                    }};
}

// --- euclidean identity atlas ---------------------------------------------

inline AtlasPtr identity_atlas(std::size_t n) {
  auto A = std::make_shared<Atlas>();
  A->name = "euclid-atlas:" + std::to_string(n);
  A->n = n;
  A->ambient_dim = n;
  Chart c;
  c.id = "1";
  c.n = n;
  c.in_domain = [](const RatVec&) { return true; };
  c.value = [](const RatVec& p) -> std::optional<RatVec> { return p; };
  c.inverse_value = c.value;
  c.forward_box = [](const Box& b, long) -> std::optional<Box> { return b; };
  c.backward_box = c.forward_box;
  c.ball_in_image = [](const RationalBall&) { return true; };
  c.box_in_domain = [](const Box&) { return true; };
  c.box_outside_domain = [](const Box&) { return false; };
  A->charts.push_back(std::move(c));
  return A;
}

inline ManifoldInstance gallery_euclidean(std::size_t n) {
  AtlasPtr A = identity_atlas(n);
  return ManifoldInstance{A, manifold_space(A), euclidean_space(n)};
}

// --- the circle with four half-charts -------------------------------------

inline bool on_unit_sphere(const RatVec& p) { return sq_norm(p) == 1; }

// Rational circle point from the tangent-half-angle parameter.
inline RatVec circle_point(const Rat& t) {
  Rat d = 1 + t * t;
  return {(1 - t * t) / d, 2 * t / d};
}

// Exact rational square root when one exists.
inline std::optional<Rat> exact_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

namespace detail {

// axis: which coordinate the chart reads (0 for f±, 1 for g±);
// sign: the sign of the other coordinate on the chart's half-circle.
inline Chart circle_half_chart(Word id, int axis, int sign) {
  Chart c;
  c.id = std::move(id);
  c.n = 1;
  int other = 1 - axis;
  c.in_domain = [other, sign](const RatVec& p) {
    return sign > 0 ? p[other] > 0 : p[other] < 0;
  };
  c.value = [axis](const RatVec& p) -> std::optional<RatVec> { return RatVec{p[axis]}; };
  c.inverse_value = [axis, other, sign](const RatVec& t) -> std::optional<RatVec> {
    auto s = exact_sqrt(1 - t[0] * t[0]);
    if (!s) return std::nullopt;
    RatVec p(2);
    p[axis] = t[0];
    p[other] = sign > 0 ? *s : -*s;
    return p;
  };
  c.forward_box = [axis](const Box& b, long) -> std::optional<Box> { return Box{b[axis]}; };
  c.backward_box = [axis, other, sign](const Box& b, long prec) -> std::optional<Box> {
    RatInterval t = b[0];
    if (t.lo < -1) t.lo = -1;
    if (t.hi > 1) t.hi = 1;
    if (t.lo > t.hi) return std::nullopt;
    RatInterval s = sqrt_enclosure(RatInterval{Rat(1), Rat(1)} - sq(t), prec);
    Box out(2);
    out[axis] = t;
    out[other] = sign > 0 ? s : -s;
    return out;
  };
  c.ball_in_image = [](const RationalBall& b) {
    return ball_subset(b, RationalBall{{Rat(0)}, Rat(1)});
  };
  c.box_in_domain = [other, sign](const Box& b) {
    return sign > 0 ? b[other].lo > 0 : b[other].hi < 0;
  };
  c.box_outside_domain = [other, sign](const Box& b) {
    return sign > 0 ? b[other].hi <= 0 : b[other].lo >= 0;
  };
  return c;
}

}  // namespace detail

inline const Word kChartFPlus = "0";
inline const Word kChartFMinus = "1";
inline const Word kChartGPlus = "10";
inline const Word kChartGMinus = "11";

inline AtlasPtr circle_atlas() {
  auto A = std::make_shared<Atlas>();
  A->name = "circle";
  A->n = 1;
  A->ambient_dim = 2;
  A->charts.push_back(detail::circle_half_chart(kChartFPlus, 0, +1));   // f+: y > 0
  A->charts.push_back(detail::circle_half_chart(kChartFMinus, 0, -1));  // f-: y < 0
  A->charts.push_back(detail::circle_half_chart(kChartGPlus, 1, +1));   // g+: x > 0
  A->charts.push_back(detail::circle_half_chart(kChartGMinus, 1, -1));  // g-: x < 0
  A->box_outside_carrier = [](const Box& b) {
    RatInterval s = box_sq_norm(b);
    return s.hi < 1 || s.lo > 1;
  };
  A->carrier_bound = Box{{Rat(-1), Rat(1)}, {Rat(-1), Rat(1)}};
  return A;
}

inline SpacePtr sphere_subspace(std::size_t n) {
  return subspace(euclidean_space(n + 1), [](const RatVec& p) { return on_unit_sphere(p); },
                  "sphere:" + std::to_string(n));
}

inline ManifoldInstance gallery_circle() {
  AtlasPtr A = circle_atlas();
  return ManifoldInstance{A, manifold_space(A), sphere_subspace(1)};
}

// --- spheres with stereographic charts ------------------------------------

inline const Word kChartStereoPlus = "1";   // removes the north pole
inline const Word kChartStereoMinus = "0";  // removes the south pole

namespace detail {

inline Chart stereo_chart(Word id, int pole, std::size_t n) {
  Chart c;
  c.id = std::move(id);
  c.n = n;
  MapFamily fwd = MapFamily::stereographic(pole, n);
  MapFamily bwd = MapFamily::stereographic_inv(pole, n);
  c.in_domain = [pole, n](const RatVec& p) { return p[n] != pole; };
  c.value = [fwd](const RatVec& p) { return map_exact(fwd, p); };
  c.inverse_value = [bwd](const RatVec& y) { return map_exact(bwd, y); };
  c.forward_box = [fwd](const Box& b, long) { return map_box(fwd, b); };
  c.backward_box = [bwd](const Box& b, long) { return map_box(bwd, b); };
  c.ball_in_image = [](const RationalBall&) { return true; };
  c.box_in_domain = [pole, n](const Box& b) {
    // the box misses the removed pole (0,...,0,pole)
    for (std::size_t i = 0; i < n; ++i)
      if (b[i].lo > 0 || b[i].hi < 0) return true;
    return b[n].lo > Rat(pole) || b[n].hi < Rat(pole);
  };
  c.box_outside_domain = nullptr;
  return c;
}

}  // namespace detail

inline AtlasPtr sphere_stereo_atlas(std::size_t n) {
  auto A = std::make_shared<Atlas>();
  A->name = "sphere-stereo:" + std::to_string(n);
  A->n = n;
  A->ambient_dim = n + 1;
  A->charts.push_back(detail::stereo_chart(kChartStereoPlus, +1, n));
  A->charts.push_back(detail::stereo_chart(kChartStereoMinus, -1, n));
  A->box_outside_carrier = [](const Box& b) {
    RatInterval s = box_sq_norm(b);
    return s.hi < 1 || s.lo > 1;
  };
  return A;
}

inline ManifoldInstance gallery_sphere_stereo(std::size_t n) {
  AtlasPtr A = sphere_stereo_atlas(n);
  return ManifoldInstance{A, manifold_space(A), sphere_subspace(n)};
}

// Punctured sphere: the single-chart structure pushed forward from R^n.
inline ManifoldInstance gallery_punctured_sphere(std::size_t n, int pole = +1) {
  auto A = std::make_shared<Atlas>();
  A->name = "punctured-sphere:" + std::to_string(n);
  A->n = n;
  A->ambient_dim = n + 1;
  A->charts.push_back(detail::stereo_chart(pole > 0 ? kChartStereoPlus : kChartStereoMinus,
                                           pole, n));
  return ManifoldInstance{A, manifold_space(A), sphere_subspace(n)};
}

// --- projective spaces -----------------------------------------------------

inline AtlasPtr projective_atlas(std::size_t n) {
  auto A = std::make_shared<Atlas>();
  A->name = "projective:" + std::to_string(n);
  A->n = n;
  A->ambient_dim = n + 1;  // tagged by nonzero representatives
  for (std::size_t i = 0; i <= n; ++i) {
    Chart c;
    c.id = nat_encode(mpz_class(i));
    c.n = n;
    MapFamily fwd = MapFamily::projective_chart(i, n);
    c.in_domain = [i](const RatVec& p) { return p[i] != 0; };
    c.value = [fwd](const RatVec& p) { return map_exact(fwd, p); };
    c.inverse_value = [i](const RatVec& y) -> std::optional<RatVec> {
      RatVec p;
      p.reserve(y.size() + 1);
      p.insert(p.end(), y.begin(), y.begin() + i);
      p.push_back(1);
      p.insert(p.end(), y.begin() + i, y.end());
      return p;
    };
    c.forward_box = [fwd](const Box& b, long) { return map_box(fwd, b); };
    c.backward_box = [i](const Box& b, long) -> std::optional<Box> {
      Box p;
      p.reserve(b.size() + 1);
      p.insert(p.end(), b.begin(), b.begin() + i);
      p.push_back(RatInterval::point(Rat(1)));
      p.insert(p.end(), b.begin() + i, b.end());
      return p;
    };
    c.ball_in_image = [](const RationalBall&) { return true; };
    c.box_in_domain = [i](const Box& b) { return b[i].lo > 0 || b[i].hi < 0; };
    A->charts.push_back(std::move(c));
  }
  return A;
}

inline ManifoldInstance gallery_projective(std::size_t n) {
  AtlasPtr A = projective_atlas(n);
  return ManifoldInstance{A, manifold_space(A), nullptr};
}

// --- the torus ------------------------------------------------------------

// T^2 as the product of two circle ball-spaces; tagged points are
// (x_u, y_u, x_v, y_v) with both pairs on the unit circle.
struct TorusInstance {
  ManifoldInstance u, v;
  SpacePtr space;  // product of the two circle ball-spaces
};

inline TorusInstance gallery_torus() {
  TorusInstance t{gallery_circle(), gallery_circle(), nullptr};
  t.space = product_space(t.u.balls, t.v.balls);
  return t;
}

// The embedding of T^2 in R^3: ((2+y_v) y_u, (2+y_v) x_u, x_v).
inline RatVec torus_map_exact(const RatVec& p) {
  const Rat &xu = p[0], &yu = p[1], &xv = p[2], &yv = p[3];
  return {(2 + yv) * yu, (2 + yv) * xu, xv};
}

// Inverse on the embedded image; exact when the radicals are rational.
inline std::optional<RatVec> torus_map_inverse_exact(const RatVec& q) {
  const Rat &a = q[0], &b = q[1], &c = q[2];
  auto r = exact_sqrt(a * a + b * b);
  if (!r || *r == 0) return std::nullopt;
  Rat yv = *r - 2;
  return RatVec{b / *r, a / *r, c, yv};
}

inline IntervalMap torus_imap() {
  return [](const Box& bx, long) -> std::optional<Box> {
    RatInterval f = bx[3] + Rat(2);
    return Box{f * bx[1], f * bx[0], bx[2]};
  };
}

inline IntervalMap torus_inverse_imap() {
  return [](const Box& bx, long prec) -> std::optional<Box> {
    RatInterval r = sqrt_enclosure(sq(bx[0]) + sq(bx[1]), prec);
    auto ri = recip(r);
    if (!ri) return std::nullopt;
    return Box{bx[1] * *ri, bx[0] * *ri, bx[2], r - Rat(2)};
  };
}

// --- the line with two origins --------------------------------------------

// Tagged points are (s, tag) with tag in {0,1}; (s,0) and (s,1) denote the
// same point when s != 0.  Codes are <i,w> with i in {"0","1"} and w a
// 1-dimensional ball code.
inline SpacePtr two_origins_space() {
  auto X = std::make_shared<EffectiveSpace>();
  X->id = "two-origins";
  X->tag_dim = 2;
  X->dom = [](const Word& w) {
    auto c = ball_code_decode(w, 1);
    return c && (c->chart == "0" || c->chart == "1");
  };
  X->enumerate = [](std::uint64_t k) {
    return ball_code_encode(k % 2 ? "1" : "0", ball_encode(enumerate_ball(1, k / 2)));
  };
  X->member = [](const Word& w, const RatVec& p) {
    auto c = ball_code_decode(w, 1);
    if (!c) return false;
    auto ball = ball_decode(c->ball, 1);
    if (!ball || !ball_contains(*ball, {p[0]})) return false;
    if (p[0] != 0) return true;
    return (p[1] == 0 && c->chart == "0") || (p[1] == 1 && c->chart == "1");
  };
  X->subset = [](const Word& uw, const Word& vw) {
    auto u = ball_code_decode(uw, 1), v = ball_code_decode(vw, 1);
    if (!u || !v) return false;
    auto bu = ball_decode(u->ball, 1), bv = ball_decode(v->ball, 1);
    if (!bu || !bv || !ball_subset(*bu, *bv)) return false;
    // across the two copies the shared origin must not be inside the source
    return u->chart == v->chart || !ball_contains(*bu, {Rat(0)});
  };
  X->disjoint = [](const Word& uw, const Word& vw, Budget) {
    auto u = ball_code_decode(uw, 1), v = ball_code_decode(vw, 1);
    if (!u || !v) return false;
    auto bu = ball_decode(u->ball, 1), bv = ball_decode(v->ball, 1);
    // interval overlap minus the origin is never empty, so chart tags are
    // irrelevant: disjointness is plain interval disjointness
    return bu && bv && ball_disjoint(*bu, *bv);
  };
  X->nonempty = [](const Word&, Budget) { return true; };
  X->hausdorff = false;
  X->local_codes = [](const RatVec& p, Budget b) {
    std::vector<Word> out;
    for (Budget t = 0; t < b && t < 60; ++t) {
      Word ball = ball_encode(RationalBall{{p[0]}, pow2(-static_cast<long>(t))});
      if (p[0] != 0) {
        out.push_back(ball_code_encode("0", ball));
        out.push_back(ball_code_encode("1", ball));
      } else {
        out.push_back(ball_code_encode(p[1] == 0 ? "0" : "1", ball));
      }
    }
    return out;
  };
  return X;
}

inline ManifoldInstance gallery_two_origins() {
  auto A = std::make_shared<Atlas>();
  A->name = "two-origins";
  A->n = 1;
  A->ambient_dim = 2;
  for (int i = 0; i < 2; ++i) {
    Chart c;
    c.id = i ? "1" : "0";
    c.n = 1;
    Rat tag(i);
    c.in_domain = [tag](const RatVec& p) { return p[0] != 0 || p[1] == tag; };
    c.value = [](const RatVec& p) -> std::optional<RatVec> { return RatVec{p[0]}; };
    c.inverse_value = [tag](const RatVec& t) -> std::optional<RatVec> {
      return RatVec{t[0], tag};
    };
    c.forward_box = [](const Box& b, long) -> std::optional<Box> { return Box{b[0]}; };
    c.backward_box = [tag](const Box& b, long) -> std::optional<Box> {
      return Box{b[0], RatInterval::point(tag)};
    };
    c.ball_in_image = [](const RationalBall&) { return true; };
    A->charts.push_back(std::move(c));
  }
  A->hausdorff = false;
  return ManifoldInstance{A, two_origins_space(), nullptr};
}

// --- the shifted line ------------------------------------------------------

// The pushforward of the identity structure on R along x -> x + a, where a
// is given only as a point name.  The chart is T_a: x -> x - a, realized as
// a name transducer by pairing listed balls of x and a.
struct ShiftedLine {
  Name a;
  SpacePtr space;  // codes are the euclidean ball codes, shifted meaning
};

inline ShiftedLine shifted_line(Name a) { return ShiftedLine{std::move(a), euclidean_space(1)}; }

inline Translator shifted_line_forward(const ShiftedLine& L, SpacePtr target) {
  Name a = L.a;
  return Translator{Discipline::PointDelta, Discipline::PointDelta, target.get(),
                    [a, target](const Name& nm, Budget b) {
                      std::vector<Word> out;
                      auto xs = query(nm, b), as = query(a, b);
                      for (Budget t = 0; t < b; ++t) {
                        // both listings tighten with position, so pair them
                        // diagonally; a sparse tail still reaches every pair
                        std::uint64_t i, j;
                        if (t % 64 == 63)
                          std::tie(i, j) = cantor_unpair(t / 64);
                        else
                          i = j = t - t / 64;
                        if (i >= xs.size() || j >= as.size()) continue;
                        auto bx = ball_decode(xs[i], 1);
                        auto ba = ball_decode(as[j], 1);
                        if (!bx || !ba) continue;
                        out.push_back(ball_encode(RationalBall{
                            {bx->center[0] - ba->center[0]}, bx->radius + ba->radius}));
                      }
                      return dedup_listing(std::move(out));
                    }};
}

inline Translator shifted_line_backward(const ShiftedLine& L, SpacePtr target) {
  Name a = L.a;
  return Translator{Discipline::PointDelta, Discipline::PointDelta, target.get(),
                    [a, target](const Name& nm, Budget b) {
                      std::vector<Word> out;
                      auto xs = query(nm, b), as = query(a, b);
                      for (Budget t = 0; t < b; ++t) {
                        // both listings tighten with position, so pair them
                        // diagonally; a sparse tail still reaches every pair
                        std::uint64_t i, j;
                        if (t % 64 == 63)
                          std::tie(i, j) = cantor_unpair(t / 64);
                        else
                          i = j = t - t / 64;
                        if (i >= xs.size() || j >= as.size()) continue;
                        auto bx = ball_decode(xs[i], 1);
                        auto ba = ball_decode(as[j], 1);
                        if (!bx || !ba) continue;
                        out.push_back(ball_encode(RationalBall{
                            {bx->center[0] + ba->center[0]}, bx->radius + ba->radius}));
                      }
                      return dedup_listing(std::move(out));
                    }};
}

// Generic pushforward of an effective structure along a bijection given by
// an exact inverse on tagged points: same codes, transported membership.
inline SpacePtr pushforward_space(SpacePtr X, std::function<RatVec(const RatVec&)> f_inverse,
                                  std::string id) {
  auto P = std::make_shared<EffectiveSpace>(*X);
  P->id = std::move(id);
  auto member = X->member;
  P->member = [member, f_inverse](const Word& w, const RatVec& p) {
    return member && member(w, f_inverse(p));
  };
  auto local = X->local_codes;
  if (local)
    P->local_codes = [local, f_inverse](const RatVec& p, Budget b) {
      return local(f_inverse(p), b);
    };
  return P;
}

}  // namespace ctop
