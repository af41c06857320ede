#pragma once

// Per-chart collapse maps into the sphere and the product embedding of a
// compact Hausdorff atlas manifold into R^{l(n+1)}, with preimage and inverse
// machinery.  The collapse map g = s^{-1} ∘ h_z ∘ phi on U = B<i,z> and
// constantly the north pole P off U; its constant branch is never reached by
// deciding x ∈ U pointwise (that is only semi-decidable) but through certified
// disjointness and the pole-cap bound below.

#include "ctop/gallery.hpp"

namespace ctop {

struct CollapseMap {
  AtlasPtr atlas;
  SpacePtr source;  // ball-space of the atlas
  Word chart;       // base chart id i
  RationalBall zball;  // rational ball z with mu(z) ⊆ phi_i(U_i)
  std::size_t n = 1;   // manifold dimension; target sphere is S^n ⊂ R^{n+1}
  SpacePtr sphere;
  RatVec pole;         // P = (0,...,0,1), the value off U
  Word domain_code;    // <i, z> as a source-space code
  Translator forward;  // point names of M -> point names on the sphere
};

namespace detail {

// Enclosure of s^{-1}(h_z(.)) over a chart-coordinate box (for codes already
// certified inside U), pulled through the transition when the code lives in
// another chart.
inline std::optional<Box> collapse_formula_box(const Chart* cj, const Chart* ci, bool same_chart,
                                               const RationalBall& z, std::size_t n,
                                               const Box& vbox, long prec) {
  Box chart_box = vbox;
  if (!same_chart) {
    auto amb = cj->backward_box(vbox, prec);
    if (!amb) return std::nullopt;
    auto fb = ci->forward_box(*amb, prec);
    if (!fb) return std::nullopt;
    chart_box = *fb;
  }
  auto hz = map_box(MapFamily::ball_to_space(z), chart_box);
  if (!hz) return std::nullopt;
  return map_box(MapFamily::stereographic_inv(1, n), *hz);
}

// |g(x) - P|^2 ≤ 4(1-l2)^2 / (l2 + (1-l2)^2) whenever the normalized chart
// coordinate u = (phi(x) - q)/eps of every in-U point of the code satisfies
// |u|^2 ≥ l2: |h(u)| grows monotonically with |u| and |s^{-1}(y) - P|^2 =
// 4/(|y|^2 + 1).  Off-U points land exactly on P.  Returns a dyadic radius
// rho with rho^2 strictly above the bound (nullopt when l2 ≤ 0 gives no
// information beyond the trivial rho = 2).
inline Rat pole_cap_radius(const Rat& l2) {
  if (l2 >= 1) return pow2(-50);
  Rat one_m = 1 - l2;
  Rat bound = 4 * one_m * one_m / (l2 + one_m * one_m);
  long e = 1;  // rho = 2 always works: antipodal distance on the sphere
  while (e > -50 && pow2(2 * (e - 1)) > bound) --e;
  return pow2(e);
}

}  // namespace detail

inline CollapseMap collapse_map(AtlasPtr A, SpacePtr phi_space, const Word& chart_id,
                                const RationalBall& z) {
  const Chart* ci = A->find(chart_id);
  if (!ci || !ci->ball_in_image(z))
    throw ContractViolation("collapse chart image must be a rational ball inside phi_i(U_i)");
  std::size_t n = A->n;
  CollapseMap c;
  c.atlas = A;
  c.source = phi_space;
  c.chart = chart_id;
  c.zball = z;
  c.n = n;
  c.sphere = sphere_subspace(n);
  c.pole = RatVec(n + 1, Rat(0));
  c.pole[n] = 1;
  c.domain_code = ball_code_encode(chart_id, ball_encode(z));
  RatVec P = c.pole;
  Word dom_code = c.domain_code;
  SpacePtr sphere = c.sphere;
  c.forward = Translator{
      Discipline::PointDelta, Discipline::PointDelta, sphere.get(),
      [A, phi_space, sphere, chart_id, z, n, P, dom_code](const Name& nm, Budget b) {
        const Chart* ci = A->find(chart_id);
        std::vector<Word> out;
        auto ws = query(nm, b);
        for (std::size_t t = 0; t < ws.size(); ++t) {
          auto code = ball_code_decode(ws[t], n);
          if (!code) continue;
          const Chart* cj = A->find(code->chart);
          auto v = ball_decode(code->ball, n);
          if (!cj || !v || !cj->ball_in_image(*v)) continue;
          long prec = 16 + static_cast<long>(t);
          long cap_k = static_cast<long>(std::min<std::size_t>(t, 50));
          if (code->chart == chart_id) {
            if (ball_subset(*v, z)) {
              auto img =
                  detail::collapse_formula_box(cj, ci, true, z, n, ball_box(*v), prec);
              if (img) out.push_back(ball_encode(circumscribe(*img, prec)));
              continue;
            }
            // normalized lower bound of |u|^2 over the code's box
            Box ub = ball_box(*v);
            for (std::size_t d = 0; d < n; ++d)
              ub[d] = Rat(Rat(1) / z.radius) * (ub[d] - z.center[d]);
            Rat l2 = box_sq_norm(ub).lo;
            if (l2 >= 1) {
              out.push_back(ball_encode(RationalBall{P, pow2(-cap_k)}));
            } else if (l2 > 0) {
              out.push_back(ball_encode(RationalBall{P, detail::pole_cap_radius(l2)}));
            }
            continue;
          }
          Budget beta = 64 + 8 * t;
          if (phi_space->disjoint && phi_space->disjoint(ws[t], dom_code, beta)) {
            out.push_back(ball_encode(RationalBall{P, pow2(-cap_k)}));
          } else if (phi_space->subset_cert && phi_space->subset_cert(ws[t], dom_code, beta)) {
            auto img = detail::collapse_formula_box(cj, ci, false, z, n, ball_box(*v), prec);
            if (img) out.push_back(ball_encode(circumscribe(*img, prec)));
          }
        }
        return dedup_listing(std::move(out));
      }};
  return c;
}

// Open name of g^{-1}(V) for a rational-ball cap V of the sphere.  When
// P ∉ V the preimage sits inside U and is listed directly from certified-
// inside codes; when P ∈ V the complement K = S^n ∖ V pulls back to a compact
// K' ⊆ U, named by covers, and the output is the complement machine's listing.
inline Name collapse_preimage(const CollapseMap& c, const RationalBall& V) {
  AtlasPtr A = c.atlas;
  SpacePtr X = c.source;
  Word chart_id = c.chart;
  RationalBall z = c.zball;
  std::size_t n = c.n;
  Word dom_code = c.domain_code;

  if (!ball_contains(V, c.pole)) {
    // direct branch: sweep the enumeration densely with modest certification
    // effort; a sparse tail dovetails unbounded effort for completeness
    return Name{Discipline::OpenTheta, X.get(), [A, X, chart_id, z, n, dom_code, V](Budget b) {
                  const Chart* ci = A->find(chart_id);
                  std::vector<Word> out;
                  for (Budget t = 0; t < b; ++t) {
                    std::uint64_t e, s;
                    if (t % 64 == 63) {
                      std::tie(e, s) = cantor_unpair(t / 64);
                    } else {
                      Budget d = t - t / 64;
                      e = d / 8;
                      s = d % 8;
                    }
                    Word w = X->enumerate(e);
                    auto code = ball_code_decode(w, n);
                    if (!code) continue;
                    const Chart* cj = A->find(code->chart);
                    auto v = ball_decode(code->ball, n);
                    if (!cj || !v || !cj->ball_in_image(*v)) continue;
                    bool same = code->chart == chart_id;
                    long prec = 16 + static_cast<long>(s);
                    // cheap image filter first, certification into U second
                    auto img = detail::collapse_formula_box(cj, ci, same, z, n, ball_box(*v), prec);
                    if (!img || !box_in_ball(*img, V)) continue;
                    if (same ? ball_subset(*v, z)
                             : X->subset_cert && X->subset_cert(w, dom_code, 64 + 8 * s))
                      out.push_back(w);
                  }
                  return dedup_listing(std::move(out));
                }};
  }

  // compact branch: K' = g^{-1}(S^n ∖ V) ⊆ U
  if (!A->carrier_bound)
    throw ContractViolation("compact preimage branch needs a bounded carrier");
  RatVec P = c.pole;
  CompactRegion K;
  K.bound = *A->carrier_bound;
  K.misses = [A, chart_id, z, n, V, P](const Box& bx) {
    if (A->box_outside_carrier && A->box_outside_carrier(bx)) return true;
    const Chart* ci = A->find(chart_id);
    if (ci->box_outside_domain && ci->box_outside_domain(bx)) return true;  // g ≡ P ∈ V there
    // Every carrier point of bx maps either by the formula (when it lies in
    // U: its chart value is enclosed by forward_box) or to P, and P ∈ V; so
    // the box misses K' once the formula part of the image sits inside V too.
    auto cb = ci->forward_box(bx, 24);
    if (!cb) return false;
    Box ub = *cb;
    for (std::size_t d = 0; d < n; ++d)
      ub[d] = Rat(Rat(1) / z.radius) * (ub[d] - z.center[d]);
    RatInterval u2 = box_sq_norm(ub);
    if (u2.lo >= 1) return true;  // entirely off U, so g ≡ P ∈ V
    if (u2.hi < 1) {
      auto img = detail::collapse_formula_box(ci, ci, true, z, n, *cb, 24);
      if (img && box_in_ball(*img, V)) return true;
    }
    if (u2.lo > 0) {
      // every image point lies within the pole-cap radius of P, and P ∈ V;
      // certify B(P, rho) ⊆ V without leaving the rationals
      Rat rho = detail::pole_cap_radius(u2.lo);
      Rat s = sqrt_enclosure_rat(sq_dist(P, V.center), 24).hi;
      if (s + rho < V.radius) return true;
    }
    return false;
  };

  // seeded covers: dyadic same-chart grids at a few resolutions
  std::vector<std::vector<Word>> seeds;
  const Chart* ci = A->find(chart_id);
  for (long d = 2; d <= 5; ++d) {
    std::vector<Word> cover;
    long span = 1 << d;
    std::vector<long> idx(n, -span);
    while (true) {
      RatVec center(n);
      for (std::size_t k = 0; k < n; ++k)
        center[k] = z.center[k] + z.radius * rat(idx[k], span);
      RationalBall cell{center, z.radius * pow2(1 - d)};
      if (ci->ball_in_image(cell)) cover.push_back(ball_code_encode(chart_id, ball_encode(cell)));
      std::size_t k = 0;
      while (k < n && ++idx[k] > span) idx[k++] = -span;
      if (k == n) break;
    }
    seeds.push_back(std::move(cover));
  }

  Name kappa = kappa_name(X, std::move(K), std::move(seeds));
  Name comp = compact_complement(X, kappa);
  return Name{Discipline::OpenTheta, X.get(), comp.producer};
}

// --- the product embedding -------------------------------------------------

struct Embedding {
  std::vector<CollapseMap> components;
  std::size_t n = 1;        // manifold dimension
  std::size_t out_dim = 0;  // l(n+1)
  SpacePtr target;          // R^{l(n+1)}
  Translator forward;       // delta_M -> delta^{l(n+1)}
  Translator inverse;       // delta^{l(n+1)} -> delta_M, diverges off the image
};

inline Embedding embed_compact(SpacePtr phi_space, std::vector<CollapseMap> comps) {
  if (comps.empty()) throw ContractViolation("embedding needs at least one chart");
  std::size_t n = comps.front().n;
  std::size_t l = comps.size();
  std::size_t q = l * (n + 1);
  Embedding E;
  E.components = comps;
  E.n = n;
  E.out_dim = q;
  E.target = euclidean_space(q);

  // forward: at step t, combine each component's tightest ball among its
  // first t+1 listed codes; centers concatenate, radii add
  E.forward = Translator{
      Discipline::PointDelta, Discipline::PointDelta, E.target.get(),
      [comps, n, l, q](const Name& nm, Budget b) {
        std::vector<std::vector<std::optional<RationalBall>>> balls(l);
        for (std::size_t k = 0; k < l; ++k) {
          Name gk = apply_translator(comps[k].forward, nm);
          for (const Word& w : query(gk, b)) balls[k].push_back(ball_decode(w, n + 1));
        }
        std::vector<Word> out;
        std::vector<std::optional<RationalBall>> best(l);
        for (Budget t = 0; t < b; ++t) {
          bool all = true;
          RatVec center;
          Rat radius = 0;
          for (std::size_t k = 0; k < l; ++k) {
            if (t < balls[k].size() && balls[k][t] &&
                (!best[k] || balls[k][t]->radius < best[k]->radius))
              best[k] = balls[k][t];
            if (!best[k]) {
              all = false;
              break;
            }
            center.insert(center.end(), best[k]->center.begin(), best[k]->center.end());
            radius += best[k]->radius;
          }
          if (all) out.push_back(ball_encode(RationalBall{std::move(center), radius}));
        }
        return dedup_listing(std::move(out));
      }};

  // inverse: find a component block certifiably away from the pole (the
  // stereographic enclosure only succeeds there), then run s, h_z^{-1}, and
  // the chart re-coding
  AtlasPtr A = comps.front().atlas;
  E.inverse = Translator{
      Discipline::PointDelta, Discipline::PointDelta, phi_space.get(),
      [phi_space, comps, A, n, l, q](const Name& nm, Budget b) {
        std::vector<Word> out;
        auto ws = query(nm, b);
        for (std::size_t t = 0; t < ws.size(); ++t) {
          auto ball = ball_decode(ws[t], q);
          if (!ball) continue;
          long prec = 16 + static_cast<long>(t);
          for (std::size_t k = 0; k < l; ++k) {
            Box sbox(n + 1);
            for (std::size_t d = 0; d <= n; ++d) {
              const Rat& c = ball->center[k * (n + 1) + d];
              sbox[d] = RatInterval{c - ball->radius, c + ball->radius};
            }
            auto st = map_box(MapFamily::stereographic(1, n), sbox);
            if (!st) continue;  // block may contain P: cannot invert here
            auto cb = imap_hw_inverse(comps[k].zball)(*st, prec);
            if (!cb) continue;
            RationalBall chart_ball = circumscribe(*cb, prec);
            const Chart* ci = A->find(comps[k].chart);
            if (ci && ci->ball_in_image(chart_ball))
              out.push_back(ball_code_encode(comps[k].chart, ball_encode(chart_ball)));
          }
        }
        return dedup_listing(std::move(out));
      }};
  return E;
}

// The standard embedding data for the 4-half-chart circle: each chart
// restricted to the image ball B(0, 3/4), which the four domains still cover.
inline Embedding circle_embedding(const ManifoldInstance& circle) {
  RationalBall z{RatVec{Rat(0)}, rat(3, 4)};
  std::vector<CollapseMap> comps;
  for (const Chart& ch : circle.atlas->charts)
    comps.push_back(collapse_map(circle.atlas, circle.balls, ch.id, z));
  return embed_compact(circle.balls, std::move(comps));
}

// --- the torus-in-R^3 closed form as name transducers ----------------------

// Point names of T^2 (product of circle ball-spaces) to point names of the
// embedded image in R^3.
inline Translator torus_embedding_forward(const TorusInstance& T, SpacePtr target) {
  AtlasPtr A = T.u.atlas;
  return Translator{
      Discipline::PointDelta, Discipline::PointDelta, target.get(),
      [A, target](const Name& nm, Budget b) {
        std::vector<Word> out;
        auto ws = query(nm, b);
        for (std::size_t t = 0; t < ws.size(); ++t) {
          auto parts = scan_wrapped(ws[t]);
          if (parts.size() != 2 || tuple(parts) != ws[t]) continue;
          long prec = 16 + static_cast<long>(t);
          Box amb4;
          bool ok = true;
          for (const Word& part : parts) {
            auto c = ball_code_decode(part, 1);
            const Chart* ch = c ? A->find(c->chart) : nullptr;
            std::optional<RationalBall> v;
            if (c) v = ball_decode(c->ball, 1);
            if (!ch || !v || !ch->ball_in_image(*v)) {
              ok = false;
              break;
            }
            auto box = ch->backward_box(ball_box(*v), prec);
            if (!box) {
              ok = false;
              break;
            }
            amb4.insert(amb4.end(), box->begin(), box->end());
          }
          if (!ok) continue;
          auto img = torus_imap()(amb4, prec);
          if (img) out.push_back(ball_encode(circumscribe(*img, prec)));
        }
        return dedup_listing(std::move(out));
      }};
}

// Inverse on the image: R^3 balls back to product codes of T^2.
inline Translator torus_embedding_inverse(const TorusInstance& T) {
  AtlasPtr A = T.u.atlas;
  SpacePtr space = T.space;
  return Translator{
      Discipline::PointDelta, Discipline::PointDelta, space.get(),
      [A, space](const Name& nm, Budget b) {
        std::vector<Word> out;
        auto ws = query(nm, b);
        for (std::size_t t = 0; t < ws.size(); ++t) {
          auto ball = ball_decode(ws[t], 3);
          if (!ball) continue;
          long prec = 16 + static_cast<long>(t);
          auto amb4 = torus_inverse_imap()(ball_box(*ball), prec);
          if (!amb4) continue;
          Box bu{(*amb4)[0], (*amb4)[1]}, bv{(*amb4)[2], (*amb4)[3]};
          auto recode = [&](const Box& bx) {
            std::vector<Word> codes;
            for (const Chart& ch : A->charts) {
              if (!ch.box_in_domain || !ch.box_in_domain(bx)) continue;
              auto img = ch.forward_box(bx, prec);
              if (!img) continue;
              RationalBall c = circumscribe(*img, prec);
              if (ch.ball_in_image(c)) codes.push_back(ball_code_encode(ch.id, ball_encode(c)));
            }
            return codes;
          };
          for (const Word& cu : recode(bu))
            for (const Word& cv : recode(bv)) out.push_back(tuple2(cu, cv));
        }
        return dedup_listing(std::move(out));
      }};
}

}  // namespace ctop
