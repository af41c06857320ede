#pragma once

// Computable euclidean space: the rational-ball base notation, point names,
// the Cauchy representation, and the concrete homeomorphisms (ball-to-space,
// affine maps, stereographic projection) as name transducers.

#include "ctop/decision.hpp"
#include "ctop/espace.hpp"

namespace ctop {

inline SpacePtr euclidean_space(std::size_t n) {
  auto X = std::make_shared<EffectiveSpace>();
  X->id = "euclid:" + std::to_string(n);
  X->tag_dim = n;
  X->dom = [n](const Word& w) { return ball_valid(w, n); };
  X->enumerate = [n](std::uint64_t k) { return ball_encode(enumerate_ball(n, k)); };
  X->member = [n](const Word& w, const RatVec& p) {
    auto b = ball_decode(w, n);
    return b && ball_contains(*b, p);
  };
  X->subset = [n](const Word& u, const Word& v) {
    auto bu = ball_decode(u, n), bv = ball_decode(v, n);
    return bu && bv && ball_subset(*bu, *bv);
  };
  X->disjoint = [n](const Word& u, const Word& v, Budget) {
    auto bu = ball_decode(u, n), bv = ball_decode(v, n);
    return bu && bv && ball_disjoint(*bu, *bv);
  };
  X->nonempty = [](const Word&, Budget) { return true; };
  X->hausdorff = true;
  X->local_codes = [n](const RatVec& p, Budget b) {
    std::vector<Word> out;
    for (Budget t = 0; t < b && t < 64; ++t)
      out.push_back(ball_encode(RationalBall{p, pow2(-static_cast<long>(t))}));
    return out;
  };
  X->box_inside_code = [n](const Word& w, const Box& bx) {
    auto b = ball_decode(w, n);
    return b && box_in_ball(bx, *b);
  };
  return X;
}

// δ-name of an exact rational point (the tagged-point name specialized).
inline Name point_from_rational(SpacePtr X, RatVec q) { return point_name(X, std::move(q)); }

// Smallest-radius ball listed by a euclidean-coded δ-name at a budget.
inline std::optional<RationalBall> tightest_ball(const Name& n, std::size_t dim, Budget b) {
  std::optional<RationalBall> best;
  for (const Word& w : query(n, b)) {
    auto ball = ball_decode(w, dim);
    if (ball && (!best || ball->radius < best->radius)) best = ball;
  }
  return best;
}

// --- Cauchy representation ------------------------------------------------

// Stream format: #w0#w1#w2#... with each w_i a tuple of n rational literals
// and |x - w_i| < 2^-i.
struct CauchyName {
  std::size_t n;
  WordStream stream;
};

inline CauchyName cauchy_from_rational(const RatVec& q) {
  Word entry = "#" + ratvec_encode(q);
  return CauchyName{q.size(), WordStream::repeat(entry)};
}

// Complete approximants visible in a stream prefix (an entry counts once the
// next '#' has appeared).
inline std::vector<RatVec> cauchy_entries(const CauchyName& c, Budget b) {
  Word p = c.stream.prefix(b);
  std::vector<RatVec> out;
  std::size_t pos = p.find('#');
  while (pos != Word::npos) {
    std::size_t next = p.find('#', pos + 1);
    if (next == Word::npos) break;
    auto v = ratvec_decode(p.substr(pos + 1, next - pos - 1), c.n);
    if (!v) break;
    out.push_back(*v);
    pos = next;
  }
  return out;
}

// ρ → δ: list a ball once some approximant certifies containment, plus the
// fast balls B(w_i, 2^{1-i}) which always contain the point.
inline Name cauchy_to_delta(SpacePtr X, const CauchyName& c) {
  std::size_t n = c.n;
  return Name{Discipline::PointDelta, X.get(), [X, c, n](Budget b) {
                auto entries = cauchy_entries(c, b);
                std::vector<Word> out;
                for (Budget t = 0; t < b; ++t) {
                  if (t < entries.size() && t < 62)
                    out.push_back(
                        ball_encode(RationalBall{entries[t], pow2(1 - static_cast<long>(t))}));
                  auto [i, j] = cantor_unpair(t);
                  if (i >= entries.size() || i >= 62) continue;
                  RationalBall u = enumerate_ball(n, j);
                  Rat slack = u.radius - pow2(-static_cast<long>(i));
                  if (slack > 0 && sq_dist(entries[i], u.center) < slack * slack)
                    out.push_back(ball_encode(u));
                }
                return dedup_listing(std::move(out));
              }};
}

// δ → ρ: entry i is the center of the first-listed ball of radius <= 2^-i.
// First-listed is stable under budget growth, so the stream is monotone.
inline CauchyName delta_to_cauchy(const Name& d, std::size_t n) {
  return CauchyName{n, WordStream([d, n](Budget b) {
                      auto ws = query(d, b);
                      Word out;
                      for (long i = 0; out.size() < b; ++i) {
                        std::optional<RatVec> entry;
                        for (const Word& w : ws) {
                          auto ball = ball_decode(w, n);
                          if (ball && ball->radius <= pow2(-i)) {
                            entry = ball->center;
                            break;
                          }
                        }
                        if (!entry) break;
                        out += "#" + ratvec_encode(*entry);
                      }
                      out.resize(std::min<std::size_t>(out.size(), b));
                      return out;
                    })};
}

// --- interval maps and map-driven name transducers ------------------------

// A partial map with certified interval enclosures; `prec` controls the
// accuracy of any internal radical enclosures.
using IntervalMap = std::function<std::optional<Box>(const Box&, long prec)>;

inline IntervalMap imap_from_family(MapFamily m) {
  return [m = std::move(m)](const Box& b, long) { return map_box(m, b); };
}

inline IntervalMap imap_compose(std::vector<IntervalMap> fs) {
  return [fs = std::move(fs)](const Box& b, long prec) -> std::optional<Box> {
    Box cur = b;
    for (const auto& f : fs) {
      auto next = f(cur, prec);
      if (!next) return std::nullopt;
      cur = *next;
    }
    return cur;
  };
}

// h^{-1}(y) = 2y / (1 + sqrt(1 + 4|y|^2)), the inverse of the
// ball-to-space homeomorphism for the unit ball.
inline IntervalMap imap_h_inverse() {
  return [](const Box& b, long prec) -> std::optional<Box> {
    RatInterval arg = Rat(4) * box_sq_norm(b) + Rat(1);
    RatInterval root = sqrt_enclosure(arg, prec);
    auto r = recip(root + Rat(1));
    if (!r) return std::nullopt;
    Box out(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = (Rat(2) * b[i]) * *r;
    return out;
  };
}

// h_w^{-1} = T_q^{-1} ∘ S_eps ∘ h^{-1} for w = B(q, eps).
inline IntervalMap imap_hw_inverse(const RationalBall& w) {
  return [w](const Box& b, long prec) -> std::optional<Box> {
    auto mid = imap_h_inverse()(b, prec);
    if (!mid) return std::nullopt;
    Box out(mid->size());
    for (std::size_t i = 0; i < mid->size(); ++i) out[i] = w.radius * (*mid)[i] + w.center[i];
    return out;
  };
}

// An open rational ball circumscribing the (closed) box.
inline RationalBall circumscribe(const Box& bx, long prec) {
  Rat half_diag_sq = 0;
  for (const auto& iv : bx) {
    Rat h = iv.width() / 2;
    half_diag_sq += h * h;
  }
  Rat r = sqrt_enclosure_rat(half_diag_sq, prec).hi + pow2(-prec);
  return RationalBall{box_mid(bx), r};
}

// δ→δ transducer driven by an interval map: each listed input ball maps to
// a circumscribed enclosure of its image box, at precision growing with the
// listing position.
inline Translator translator_from_imap(SpacePtr target, IntervalMap f, std::size_t in_dim) {
  return Translator{Discipline::PointDelta, Discipline::PointDelta, target.get(),
                    [target, f = std::move(f), in_dim](const Name& nm, Budget b) {
                      std::vector<Word> out;
                      auto ws = query(nm, b);
                      for (std::size_t t = 0; t < ws.size(); ++t) {
                        auto ball = ball_decode(ws[t], in_dim);
                        if (!ball) continue;
                        long prec = 16 + static_cast<long>(t);
                        auto img = f(ball_box(*ball), prec);
                        if (img) out.push_back(ball_encode(circumscribe(*img, prec)));
                      }
                      return dedup_listing(std::move(out));
                    }};
}

// Named transducers for the shipped homeomorphisms.

inline Translator ball_homeo_forward(SpacePtr target, std::size_t n) {
  return translator_from_imap(
      target, imap_from_family(MapFamily::ball_to_space(RationalBall{RatVec(n, Rat(0)), Rat(1)})),
      n);
}

inline Translator ball_homeo_backward(SpacePtr target, std::size_t n) {
  return translator_from_imap(target, imap_h_inverse(), n);
}

inline Translator translation_map(SpacePtr target, RatVec a) {
  std::size_t n = a.size();
  return translator_from_imap(target, imap_from_family(MapFamily::translation(std::move(a))), n);
}

inline Translator scaling_map(SpacePtr target, Rat eps, std::size_t n) {
  return translator_from_imap(target, imap_from_family(MapFamily::scaling(std::move(eps), n)), n);
}

inline Translator hw_map(SpacePtr target, const RationalBall& w) {
  return translator_from_imap(target, imap_from_family(MapFamily::ball_to_space(w)), w.dim());
}

inline Translator stereo_forward(SpacePtr target, int pole, std::size_t n) {
  return translator_from_imap(target, imap_from_family(MapFamily::stereographic(pole, n)), n + 1);
}

inline Translator stereo_backward(SpacePtr target, int pole, std::size_t n) {
  return translator_from_imap(target, imap_from_family(MapFamily::stereographic_inv(pole, n)), n);
}

}  // namespace ctop
