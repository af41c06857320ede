#pragma once

// Computable atlases and manifolds: charts with exact and interval hooks,
// the induced ball-space of codes <i,w>, chart evaluation and transitions as
// name transducers, compatibility certification, atlas refinement, and open
// submanifolds via the time-sharing translator.

#include "ctop/euclid.hpp"

namespace ctop {

struct Chart {
  Word id;
  std::size_t n = 1;  // chart dimension

  // exact hooks on ambient tagged points
  std::function<bool(const RatVec&)> in_domain;                   // x in U_i
  std::function<std::optional<RatVec>(const RatVec&)> value;      // phi_i(x)
  std::function<std::optional<RatVec>(const RatVec&)> inverse_value;  // when rational

  // certified interval hooks
  IntervalMap forward_box;   // ambient box -> chart box enclosure
  IntervalMap backward_box;  // chart box -> ambient box enclosure

  // exact: mu(w) subset of phi_i(U_i)
  std::function<bool(const RationalBall&)> ball_in_image;

  // certified region tests on ambient boxes (optional)
  std::function<bool(const Box&)> box_in_domain;       // box ∩ carrier ⊆ U_i
  std::function<bool(const Box&)> box_outside_domain;  // box ∩ U_i = ∅
};

struct Atlas {
  std::string name;
  std::size_t n = 1;            // manifold dimension
  std::size_t ambient_dim = 1;  // tagged-point length
  std::vector<Chart> charts;
  bool hausdorff = true;
  std::function<bool(const Box&)> box_outside_carrier;  // box ∩ M = ∅ (optional)
  std::optional<Box> carrier_bound;                     // a box containing M, if bounded

  const Chart* find(const Word& id) const {
    for (const auto& c : charts)
      if (c.id == id) return &c;
    return nullptr;
  }
};

using AtlasPtr = std::shared_ptr<const Atlas>;

// --- ball codes -----------------------------------------------------------

struct BallCode {
  Word chart;
  Word ball;  // mu^n code
};

inline Word ball_code_encode(const Word& chart, const Word& ball) { return tuple2(chart, ball); }

inline std::optional<BallCode> ball_code_decode(const Word& w, std::size_t n) {
  auto parts = scan_wrapped(w);
  if (parts.size() != 2 || tuple(parts) != w) return std::nullopt;
  if (!ball_valid(parts[1], n)) return std::nullopt;
  return BallCode{parts[0], parts[1]};
}

// Enclosure of the transition phi_to ∘ phi_from^{-1} on a chart box.
inline std::optional<Box> transition_box(const Chart& from, const Chart& to, const Box& chart_box,
                                         long prec) {
  auto amb = from.backward_box(chart_box, prec);
  if (!amb) return std::nullopt;
  return to.forward_box(*amb, prec);
}

// --- the induced ball-space -----------------------------------------------

// The effective space whose base elements are the computable balls
// B<i,w> = phi_i^{-1}(mu(w)) when i is a chart id and mu(w) lies inside the
// chart image, and the empty set otherwise.
inline SpacePtr manifold_space(AtlasPtr A) {
  auto X = std::make_shared<EffectiveSpace>();
  std::size_t n = A->n;
  X->id = A->name;
  X->tag_dim = A->ambient_dim;
  X->dom = [n](const Word& w) { return ball_code_decode(w, n).has_value(); };
  std::size_t nc = A->charts.size();
  X->enumerate = [A, n, nc](std::uint64_t k) {
    // mostly real chart codes; a sparse tail walks every chart-index word so
    // the enumeration stays onto the full code domain
    if (k % 16 == 15)
      return ball_code_encode(enumerate_word(k / 16), ball_encode(enumerate_ball(n, k / 16)));
    std::uint64_t j = k - k / 16;  // dense residue
    return ball_code_encode(A->charts[j % nc].id, ball_encode(enumerate_ball(n, j / nc)));
  };
  X->member = [A, n](const Word& w, const RatVec& p) {
    auto c = ball_code_decode(w, n);
    if (!c) return false;
    const Chart* ch = A->find(c->chart);
    if (!ch) return false;
    auto ball = ball_decode(c->ball, n);
    if (!ball || !ch->ball_in_image(*ball)) return false;
    if (!ch->in_domain(p)) return false;
    auto v = ch->value(p);
    return v && ball_contains(*ball, *v);
  };

  auto interpretation_empty = [A, n](const BallCode& c) {
    const Chart* ch = A->find(c.chart);
    if (!ch) return true;
    auto ball = ball_decode(c.ball, n);
    return !ball || !ch->ball_in_image(*ball);
  };

  // certified subset across charts by covering the source ball
  X->subset_cert = [A, n, interpretation_empty](const Word& uw, const Word& vw, Budget budget) {
    auto u = ball_code_decode(uw, n), v = ball_code_decode(vw, n);
    if (!u || !v) return false;
    if (interpretation_empty(*u)) return true;
    if (interpretation_empty(*v)) return false;
    auto bu = *ball_decode(u->ball, n), bv = *ball_decode(v->ball, n);
    if (u->chart == v->chart) return ball_subset(bu, bv);
    const Chart* cu = A->find(u->chart);
    const Chart* cv = A->find(v->chart);
    std::deque<Box> queue{ball_box(bu)};
    for (Budget step = 0; step < budget; ++step) {
      if (queue.empty()) return true;
      Box bx = queue.front();
      queue.pop_front();
      if (box_outside_ball(bx, bu)) continue;
      long prec = 16 + static_cast<long>(step / 8);
      auto amb = cu->backward_box(bx, prec);
      if (amb && cv->box_in_domain && cv->box_in_domain(*amb)) {
        auto img = cv->forward_box(*amb, prec);
        if (img && box_in_ball(*img, bv)) continue;
      }
      auto [l, r] = box_split(bx);
      queue.push_back(l);
      queue.push_back(r);
    }
    return false;
  };
  X->subset = nullptr;  // cross-chart needs budgets; same-chart handled above

  X->disjoint = [A, n, interpretation_empty](const Word& uw, const Word& vw, Budget budget) {
    auto u = ball_code_decode(uw, n), v = ball_code_decode(vw, n);
    if (!u || !v) return false;
    if (interpretation_empty(*u) || interpretation_empty(*v)) return true;
    auto bu = *ball_decode(u->ball, n), bv = *ball_decode(v->ball, n);
    if (u->chart == v->chart) return ball_disjoint(bu, bv);
    const Chart* cu = A->find(u->chart);
    const Chart* cv = A->find(v->chart);
    std::deque<Box> queue{ball_box(bu)};
    for (Budget step = 0; step < budget; ++step) {
      if (queue.empty()) return true;
      Box bx = queue.front();
      queue.pop_front();
      if (box_outside_ball(bx, bu)) continue;
      long prec = 16 + static_cast<long>(step / 8);
      auto amb = cu->backward_box(bx, prec);
      if (amb) {
        if (cv->box_outside_domain && cv->box_outside_domain(*amb)) continue;
        auto img = cv->forward_box(*amb, prec);
        if (img && box_outside_ball(*img, bv)) continue;
      }
      auto [l, r] = box_split(bx);
      queue.push_back(l);
      queue.push_back(r);
    }
    return false;
  };

  // exactly decidable for gallery chart families: the interpretation is
  // nonempty iff the chart exists and the ball sits inside the image
  X->nonempty = [interpretation_empty, n](const Word& w, Budget) {
    auto c = ball_code_decode(w, n);
    return c && !interpretation_empty(*c);
  };

  X->hausdorff = A->hausdorff;

  X->local_codes = [A, n](const RatVec& p, Budget b) {
    std::vector<Word> out;
    for (Budget t = 0; t < b && t < 60; ++t) {
      for (const Chart& ch : A->charts) {
        if (!ch.in_domain(p)) continue;
        auto v = ch.value(p);
        if (!v) continue;
        RationalBall ball{*v, pow2(-static_cast<long>(t))};
        if (ch.ball_in_image(ball))
          out.push_back(ball_code_encode(ch.id, ball_encode(ball)));
      }
    }
    return out;
  };

  X->box_inside_code = [A, n](const Word& w, const Box& bx) {
    auto c = ball_code_decode(w, n);
    if (!c) return false;
    const Chart* ch = A->find(c->chart);
    auto ball = ball_decode(c->ball, n);
    if (!ch || !ball || !ch->ball_in_image(*ball)) return false;
    if (!ch->box_in_domain || !ch->box_in_domain(bx)) return false;
    auto img = ch->forward_box(bx, 24);
    return img && box_in_ball(*img, *ball);
  };
  return X;
}

// --- chart evaluation -----------------------------------------------------

// Forward: a manifold point name to the delta^n name of phi_i(x).  Listed
// codes of the same chart pass their ball through; other charts contribute
// transition enclosures once the point is certified inside U_i.
inline Translator chart_forward(AtlasPtr A, SpacePtr target, Word chart_id) {
  std::size_t n = A->n;
  return Translator{
      Discipline::PointDelta, Discipline::PointDelta, target.get(),
      [A, target, chart_id, n](const Name& nm, Budget b) {
        const Chart* ci = A->find(chart_id);
        std::vector<Word> out;
        auto ws = query(nm, b);
        for (std::size_t t = 0; t < ws.size(); ++t) {
          auto c = ball_code_decode(ws[t], n);
          if (!c) continue;
          if (c->chart == chart_id) {
            out.push_back(c->ball);
            continue;
          }
          const Chart* cj = A->find(c->chart);
          if (!cj || !ci) continue;
          auto ball = ball_decode(c->ball, n);
          if (!ball || !cj->ball_in_image(*ball)) continue;
          long prec = 16 + static_cast<long>(t);
          auto amb = cj->backward_box(ball_box(*ball), prec);
          if (!amb || !ci->box_in_domain || !ci->box_in_domain(*amb)) continue;
          auto img = ci->forward_box(*amb, prec);
          if (img) out.push_back(ball_encode(circumscribe(*img, prec)));
        }
        return dedup_listing(std::move(out));
      }};
}

// Backward: a delta^n name of phi_i(x) to a manifold point name of x
// (for x known to lie in U_i).
inline Translator chart_backward(AtlasPtr A, SpacePtr manifold, Word chart_id) {
  std::size_t n = A->n;
  return Translator{Discipline::PointDelta, Discipline::PointDelta, manifold.get(),
                    [A, manifold, chart_id, n](const Name& nm, Budget b) {
                      const Chart* ci = A->find(chart_id);
                      std::vector<Word> out;
                      if (!ci) return out;
                      for (const Word& w : query(nm, b)) {
                        auto ball = ball_decode(w, n);
                        if (ball && ci->ball_in_image(*ball))
                          out.push_back(ball_code_encode(chart_id, w));
                      }
                      return dedup_listing(std::move(out));
                    }};
}

// Transition phi_j ∘ phi_i^{-1} as a delta^n -> delta^n transducer.
inline Translator transition_translator(AtlasPtr A, SpacePtr target, Word i, Word j) {
  std::size_t n = A->n;
  return Translator{Discipline::PointDelta, Discipline::PointDelta, target.get(),
                    [A, target, i, j, n](const Name& nm, Budget b) {
                      const Chart* ci = A->find(i);
                      const Chart* cj = A->find(j);
                      std::vector<Word> out;
                      if (!ci || !cj) return out;
                      auto ws = query(nm, b);
                      for (std::size_t t = 0; t < ws.size(); ++t) {
                        auto ball = ball_decode(ws[t], n);
                        if (!ball || !ci->ball_in_image(*ball)) continue;
                        long prec = 16 + static_cast<long>(t);
                        auto img = transition_box(*ci, *cj, ball_box(*ball), prec);
                        if (img) out.push_back(ball_encode(circumscribe(*img, prec)));
                      }
                      return dedup_listing(std::move(out));
                    }};
}

// --- compatibility certification ------------------------------------------

struct CompatibilityFailure {
  std::size_t sample;
  int direction;  // 0: a->b, 1: b->a
  Word code;      // offending listed code (empty = no output at all)
};

struct CompatibilityReport {
  std::vector<CompatibilityFailure> failures;
  bool passed() const { return failures.empty(); }
};

// Check on tagged samples that translated point names are sound for the
// target space (every listed code contains the point) and productive at the
// test budget.
inline CompatibilityReport compatibility_certificate(SpacePtr a, SpacePtr b, const Translator& ab,
                                                     const Translator& ba,
                                                     const std::vector<RatVec>& samples,
                                                     Budget budget) {
  CompatibilityReport rep;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    auto check = [&](SpacePtr src, SpacePtr dst, const Translator& t, int dir) {
      Name nm = apply_translator(t, point_name(src, samples[s]));
      auto ws = query(nm, budget);
      if (ws.empty()) rep.failures.push_back({s, dir, Word{}});
      for (const Word& w : ws)
        if (!dst->member || !dst->member(w, samples[s])) rep.failures.push_back({s, dir, w});
    };
    check(a, b, ab, 0);
    check(b, a, ba, 1);
  }
  return rep;
}

// --- non-empty balls and refinement ---------------------------------------

// Enumerator of codes with certified non-empty interpretation.
inline std::function<std::optional<Word>(std::uint64_t)> nonempty_ball_enumerator(SpacePtr X) {
  return [X](std::uint64_t k) -> std::optional<Word> {
    Word w = X->enumerate(k);
    if (X->nonempty && X->nonempty(w, k + 1)) return w;
    return std::nullopt;
  };
}

// Pruned space: the same codes restricted to certified non-empty ones.
inline SpacePtr normalize_balls(SpacePtr X) {
  auto P = std::make_shared<EffectiveSpace>(*X);
  P->id = X->id + "'";
  auto dom = X->dom;
  auto nonempty = X->nonempty;
  P->dom = [dom, nonempty](const Word& w) { return dom(w) && nonempty && nonempty(w, 1); };
  return P;
}

// Ball-image refinement: one chart per selected non-empty computable ball
// <i,z>; the new chart is phi_i restricted to B<i,z> with image mu(z).
// With `full_space` set, each chart is post-composed with h_z so its image
// becomes all of R^n.
struct RefinedAtlas {
  AtlasPtr atlas;
  Translator to_refined;    // delta_Phi -> delta_Psi
  Translator from_refined;  // delta_Psi -> delta_Phi
};

inline RefinedAtlas refine_atlas(AtlasPtr A, SpacePtr phi_space,
                                 const std::vector<BallCode>& selection, bool full_space) {
  std::size_t n = A->n;
  auto R = std::make_shared<Atlas>();
  R->name = A->name + (full_space ? "/full" : "/balls");
  R->n = n;
  R->ambient_dim = A->ambient_dim;
  R->hausdorff = A->hausdorff;
  R->box_outside_carrier = A->box_outside_carrier;

  std::vector<RationalBall> zs;
  for (const BallCode& sel : selection) {
    const Chart* base = A->find(sel.chart);
    auto z = ball_decode(sel.ball, n);
    if (!base || !z || !base->ball_in_image(*z)) continue;
    zs.push_back(*z);
    Chart c;
    c.id = ball_code_encode(sel.chart, sel.ball);
    c.n = n;
    RationalBall zb = *z;
    const Chart b = *base;  // copy of the hooks
    c.in_domain = [b, zb](const RatVec& p) {
      if (!b.in_domain(p)) return false;
      auto v = b.value(p);
      return v && ball_contains(zb, *v);
    };
    if (full_space) {
      MapFamily hz = MapFamily::ball_to_space(zb);
      c.value = [b, hz](const RatVec& p) -> std::optional<RatVec> {
        auto v = b.value(p);
        if (!v) return std::nullopt;
        return map_exact(hz, *v);
      };
      c.inverse_value = nullptr;
      c.forward_box = [b, hz](const Box& bx, long prec) -> std::optional<Box> {
        auto v = b.forward_box(bx, prec);
        if (!v) return std::nullopt;
        return map_box(hz, *v);
      };
      IntervalMap hz_inv = imap_hw_inverse(zb);
      c.backward_box = [b, hz_inv](const Box& bx, long prec) -> std::optional<Box> {
        auto v = hz_inv(bx, prec);
        if (!v) return std::nullopt;
        return b.backward_box(*v, prec);
      };
      c.ball_in_image = [](const RationalBall&) { return true; };  // image is R^n
    } else {
      c.value = b.value;
      c.inverse_value = b.inverse_value;
      c.forward_box = b.forward_box;
      c.backward_box = b.backward_box;
      c.ball_in_image = [zb](const RationalBall& u) { return ball_subset(u, zb); };
    }
    c.box_in_domain = [b, zb](const Box& bx) {
      if (!b.box_in_domain || !b.box_in_domain(bx)) return false;
      auto img = b.forward_box(bx, 24);
      return img && box_in_ball(*img, zb);
    };
    c.box_outside_domain = [b, zb](const Box& bx) {
      if (b.box_outside_domain && b.box_outside_domain(bx)) return true;
      auto img = b.forward_box(bx, 24);
      return img && box_outside_ball(*img, zb);
    };
    R->charts.push_back(std::move(c));
  }
  AtlasPtr RA = R;
  SpacePtr psi_space = manifold_space(RA);

  Translator to_refined;
  if (!full_space) {
    // <i,v> with v inside a selected z becomes <<i,z>, v>
    to_refined = Translator{
        Discipline::PointDelta, Discipline::PointDelta, psi_space.get(),
        [RA, psi_space, A, selection, n](const Name& nm, Budget b) {
          std::vector<Word> out;
          for (const Word& w : query(nm, b)) {
            auto c = ball_code_decode(w, n);
            if (!c) continue;
            auto ball = ball_decode(c->ball, n);
            if (!ball) continue;
            for (const BallCode& sel : selection) {
              if (sel.chart != c->chart) continue;
              auto z = ball_decode(sel.ball, n);
              if (z && ball_subset(*ball, *z))
                out.push_back(ball_code_encode(ball_code_encode(sel.chart, sel.ball), c->ball));
            }
          }
          return dedup_listing(std::move(out));
        }};
  } else {
    // <i,v> with v inside z maps through an h_z image enclosure
    to_refined = Translator{
        Discipline::PointDelta, Discipline::PointDelta, psi_space.get(),
        [RA, psi_space, selection, n](const Name& nm, Budget b) {
          std::vector<Word> out;
          auto ws = query(nm, b);
          for (std::size_t t = 0; t < ws.size(); ++t) {
            auto c = ball_code_decode(ws[t], n);
            if (!c) continue;
            auto ball = ball_decode(c->ball, n);
            if (!ball) continue;
            for (const BallCode& sel : selection) {
              if (sel.chart != c->chart) continue;
              auto z = ball_decode(sel.ball, n);
              if (!z || !ball_subset(*ball, *z)) continue;
              long prec = 16 + static_cast<long>(t);
              auto img = map_box(MapFamily::ball_to_space(*z), ball_box(*ball));
              if (img)
                out.push_back(ball_code_encode(ball_code_encode(sel.chart, sel.ball),
                                               ball_encode(circumscribe(*img, prec))));
            }
          }
          return dedup_listing(std::move(out));
        }};
  }

  Translator from_refined;
  if (!full_space) {
    // <<i,z>, v> rewrites to <i,v>
    from_refined = Translator{Discipline::PointDelta, Discipline::PointDelta, phi_space.get(),
                              [phi_space, n](const Name& nm, Budget b) {
                                std::vector<Word> out;
                                for (const Word& w : query(nm, b)) {
                                  auto c = ball_code_decode(w, n);
                                  if (!c) continue;
                                  auto inner = ball_code_decode(c->chart, n);
                                  if (inner)
                                    out.push_back(ball_code_encode(inner->chart, c->ball));
                                }
                                return dedup_listing(std::move(out));
                              }};
  } else {
    // <<i,z>, u> yields every enumerated <i,v> whose ball is certified to
    // contain h_z^{-1}(mu(u)); then phi_i(x) in h_z^{-1}(u) forces it into v
    from_refined = Translator{
        Discipline::PointDelta, Discipline::PointDelta, phi_space.get(),
        [phi_space, A, n](const Name& nm, Budget b) {
          std::vector<Word> out;
          auto ws = query(nm, b);
          for (Budget t = 0; t < b; ++t) {
            // dense sweep over candidate balls against early listed codes,
            // sparse full dovetail every 64th step
            std::uint64_t ti, tj;
            if (t % 64 == 63) {
              std::tie(ti, tj) = cantor_unpair(t / 64);
            } else {
              Budget d = t - t / 64;
              ti = d % 8;
              tj = d / 8;
            }
            if (ti >= ws.size()) continue;
            auto c = ball_code_decode(ws[ti], n);
            if (!c) continue;
            auto inner = ball_code_decode(c->chart, n);
            auto u = ball_decode(c->ball, n);
            if (!inner || !u) continue;
            auto z = ball_decode(inner->ball, n);
            if (!z) continue;
            RationalBall v = enumerate_ball(n, tj);
            const Chart* base = A->find(inner->chart);
            if (!base || !base->ball_in_image(v)) continue;  // code would denote the empty set
            long prec = 16 + static_cast<long>(t / 8);
            auto pre = imap_hw_inverse(*z)(ball_box(*u), prec);
            if (pre && box_in_ball(*pre, v))
              out.push_back(ball_code_encode(inner->chart, ball_encode(v)));
          }
          return dedup_listing(std::move(out));
        }};
  }
  (void)zs;
  return RefinedAtlas{RA, std::move(to_refined), std::move(from_refined)};
}

// --- open submanifolds (time-sharing) -------------------------------------

// Codes of the restricted structure: <k, v> with k the position of a listed
// base piece <i,w> of W and mu(v) inside mu(w); interpretation B<i,v>.
struct OpenSubmanifold {
  SpacePtr space;
  Translator restrict_name;  // delta_Phi -> delta_{Phi_W}
  Translator unrestrict;     // delta_{Phi_W} -> delta_Phi
};

inline Budget submanifold_piece_budget(std::uint64_t k) { return 64 * (k + 1); }

inline OpenSubmanifold open_submanifold(AtlasPtr A, SpacePtr phi_space, const Name& W) {
  std::size_t n = A->n;
  auto S = std::make_shared<EffectiveSpace>();
  S->id = phi_space->id + "|W";
  S->tag_dim = phi_space->tag_dim;
  S->dom = [n](const Word& w) {
    auto parts = scan_wrapped(w);
    return parts.size() == 2 && tuple(parts) == w && nat_valid(parts[0]) &&
           ball_valid(parts[1], n);
  };
  S->enumerate = [n](std::uint64_t k) {
    auto [i, j] = cantor_unpair(k);
    return tuple2(nat_encode(mpz_class(i)), ball_encode(enumerate_ball(n, j)));
  };
  auto piece = [W, n](std::uint64_t k) -> std::optional<BallCode> {
    auto ws = query(W, submanifold_piece_budget(k));
    if (k >= ws.size()) return std::nullopt;
    return ball_code_decode(ws[k], n);
  };
  S->member = [phi_space, piece, n](const Word& w, const RatVec& p) {
    auto parts = scan_wrapped(w);
    if (parts.size() != 2) return false;
    auto k = nat_decode(parts[0]);
    if (!k || !k->fits_ulong_p()) return false;
    auto pc = piece(k->get_ui());
    if (!pc) return false;
    auto v = ball_decode(parts[1], n);
    auto wball = ball_decode(pc->ball, n);
    if (!v || !wball || !ball_subset(*v, *wball)) return false;
    return phi_space->member &&
           phi_space->member(ball_code_encode(pc->chart, parts[1]), p);
  };
  S->disjoint = [phi_space, piece, n](const Word& uw, const Word& vw, Budget b) {
    auto pu = scan_wrapped(uw), pv = scan_wrapped(vw);
    if (pu.size() != 2 || pv.size() != 2) return false;
    auto ku = nat_decode(pu[0]), kv = nat_decode(pv[0]);
    if (!ku || !kv) return false;
    auto cu = piece(ku->get_ui()), cv = piece(kv->get_ui());
    if (!cu || !cv) return true;  // unpopulated pieces denote the empty set
    return phi_space->disjoint &&
           phi_space->disjoint(ball_code_encode(cu->chart, pu[1]),
                               ball_code_encode(cv->chart, pv[1]), b);
  };

  // machine: dovetail pairs (W piece, listed code of x); emit once the code
  // is certified inside the piece
  Translator restrict_name{
      Discipline::PointDelta, Discipline::PointDelta, S.get(),
      [S, phi_space, W, n](const Name& nm, Budget b) {
        std::vector<Word> out;
        auto xs = query(nm, b);
        for (Budget t = 0; t < b; ++t) {
          auto [k, j] = cantor_unpair(t);
          if (j >= xs.size()) continue;
          auto ws = query(W, submanifold_piece_budget(k));
          if (k >= ws.size()) continue;
          auto pc = ball_code_decode(ws[k], n);
          auto xc = ball_code_decode(xs[j], n);
          if (!pc || !xc || pc->chart != xc->chart) continue;
          auto wball = ball_decode(pc->ball, n);
          auto xball = ball_decode(xc->ball, n);
          if (wball && xball && ball_subset(*xball, *wball))
            out.push_back(tuple2(nat_encode(mpz_class(k)), xc->ball));
        }
        return dedup_listing(std::move(out));
      }};

  Translator unrestrict{Discipline::PointDelta, Discipline::PointDelta, phi_space.get(),
                        [phi_space, W, n](const Name& nm, Budget b) {
                          std::vector<Word> out;
                          for (const Word& w : query(nm, b)) {
                            auto parts = scan_wrapped(w);
                            if (parts.size() != 2) continue;
                            auto k = nat_decode(parts[0]);
                            if (!k || !k->fits_ulong_p()) continue;
                            auto ws = query(W, submanifold_piece_budget(k->get_ui()));
                            if (k->get_ui() >= ws.size()) continue;
                            auto pc = ball_code_decode(ws[k->get_ui()], n);
                            if (pc) out.push_back(ball_code_encode(pc->chart, parts[1]));
                          }
                          return dedup_listing(std::move(out));
                        }};

  return OpenSubmanifold{S, std::move(restrict_name), std::move(unrestrict)};
}

}  // namespace ctop
