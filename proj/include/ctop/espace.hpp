#pragma once

// Effective topological spaces: a notated base with a decidable code domain,
// semantic hooks for exact/certified queries, witness enumerations S and H,
// point/open/closed/compact names over them, and the generic constructions
// (subspace, product, predicate-space induction, compact machinery).

#include <array>
#include <memory>

#include "ctop/ball.hpp"
#include "ctop/name.hpp"

namespace ctop {

struct EffectiveSpace {
  std::string id;
  std::size_t tag_dim = 0;  // length of tagged-point vectors

  DomDecider dom;                                // decidable: w in dom nu
  std::function<Word(std::uint64_t)> enumerate;  // total, onto dom nu

  // Semantic hooks.  `member` is exact on tagged points.  `subset` is exact
  // where available; `subset_cert`/`disjoint`/`nonempty` are certified
  // semi-decisions, monotone in their budget.  Any hook may be empty.
  std::function<bool(const Word&, const RatVec&)> member;
  std::function<bool(const Word&, const Word&)> subset;
  std::function<bool(const Word&, const Word&, Budget)> subset_cert;
  std::function<bool(const Word&, const Word&, Budget)> disjoint;
  std::function<bool(const Word&, Budget)> nonempty;
  bool hausdorff = false;

  // Point-adapted codes: a prefix-monotone list of codes whose
  // interpretations contain the tagged point, shrinking around it.
  std::function<std::vector<Word>(const RatVec&, Budget)> local_codes;

  // Certified: (box intersected with the carrier) lies inside nu(code).
  // Used by the compact-cover machinery.
  std::function<bool(const Word&, const Box&)> box_inside_code;

  bool subset_at(const Word& u, const Word& v, Budget b) const {
    if (subset) return subset(u, v);
    return subset_cert && subset_cert(u, v, b);
  }
};

using SpacePtr = std::shared_ptr<const EffectiveSpace>;

// --- intersection witnesses S and Hausdorff witnesses H -------------------

// k-th candidate triple of S; engaged when certified nu(w) ⊆ nu(u) ∩ nu(v).
inline std::optional<std::array<Word, 3>> s_triple(const EffectiveSpace& X, std::uint64_t k) {
  auto idx = cantor_untuple(k, 3);
  Word u = X.enumerate(idx[0]), v = X.enumerate(idx[1]), w = X.enumerate(idx[2]);
  if (X.subset_at(w, u, k) && X.subset_at(w, v, k)) return std::array<Word, 3>{u, v, w};
  return std::nullopt;
}

// k-th candidate pair of H; engaged when certified disjoint.
inline std::optional<std::pair<Word, Word>> h_pair(const EffectiveSpace& X, std::uint64_t k) {
  if (!X.disjoint) return std::nullopt;
  auto [i, j] = cantor_unpair(k);
  Word u = X.enumerate(i), v = X.enumerate(j);
  if (X.disjoint(u, v, k)) return std::pair{u, v};
  return std::nullopt;
}

// --- names ----------------------------------------------------------------

// δ-name of an exactly tagged point: interleaves the point-adapted local
// codes with a sweep of the space's enumeration filtered by exact membership.
inline Name point_name(SpacePtr X, RatVec p) {
  const EffectiveSpace* raw = X.get();
  return Name{Discipline::PointDelta, raw,
              [X, p = std::move(p)](Budget b) {
                std::vector<Word> out;
                std::vector<Word> lc =
                    X->local_codes ? X->local_codes(p, b) : std::vector<Word>{};
                for (Budget t = 0; t < b; ++t) {
                  if (t < lc.size()) out.push_back(lc[t]);
                  Word w = X->enumerate(t);
                  if (X->member && X->member(w, p)) out.push_back(w);
                }
                return dedup_listing(std::move(out));
              }};
}

// θ-name of a finite union of base sets.
inline Name theta_from_codes(SpacePtr X, std::vector<Word> codes) {
  Name n = constant_name(Discipline::OpenTheta, X.get(), std::move(codes));
  auto inner = n.producer;
  n.producer = [X, inner](Budget b) { return inner(b); };  // keep the space alive
  return n;
}

// θ-name of nu(u) ∩ nu(v): lists every enumerated w certified inside both,
// fed by the S-candidate schedule.
inline Name intersect_theta(SpacePtr X, const Name& a, const Name& b) {
  const EffectiveSpace* raw = X.get();
  return Name{Discipline::OpenTheta, raw, [X, a, b](Budget bud) {
                std::vector<Word> as = query(a, bud), bs = query(b, bud), out;
                for (Budget t = 0; t < bud; ++t) {
                  auto idx = cantor_untuple(t, 3);
                  if (idx[0] >= as.size() || idx[1] >= bs.size()) continue;
                  Word w = X->enumerate(idx[2]);
                  if (X->subset_at(w, as[idx[0]], t) && X->subset_at(w, bs[idx[1]], t))
                    out.push_back(w);
                }
                return dedup_listing(std::move(out));
              }};
}

// ψ⁻ union: a code is exterior to A ∪ B iff it is listed as exterior to both.
inline Name union_psi_minus(SpacePtr X, const Name& a, const Name& b) {
  return Name{Discipline::ClosedPsiMinus, X.get(), [X, a, b](Budget bud) {
                std::vector<Word> as = query(a, bud), bs = query(b, bud), out;
                for (Budget t = 0; t < bud; ++t) {
                  auto [i, j] = cantor_unpair(t);
                  if (i < as.size() && j < bs.size() && as[i] == bs[j]) out.push_back(as[i]);
                }
                return dedup_listing(std::move(out));
              }};
}

// κ union: concatenating two fs-union cover codes covers the union.
inline Name union_kappa(SpacePtr X, const Name& a, const Name& b) {
  return Name{Discipline::CompactKappa, X.get(), [X, a, b](Budget bud) {
                std::vector<Word> as = query(a, bud), bs = query(b, bud), out;
                for (Budget t = 0; t < bud; ++t) {
                  auto [i, j] = cantor_unpair(t);
                  if (i < as.size() && j < bs.size()) out.push_back(as[i] + bs[j]);
                }
                return dedup_listing(std::move(out));
              }};
}

// --- separation -----------------------------------------------------------

// Search for (u, v) with u listed by x, v listed by y, certified disjoint.
// The budget bounds the number of candidate pairs examined.
inline std::optional<std::pair<Word, Word>> separate_points(const Name& x, const Name& y,
                                                            Budget budget) {
  const EffectiveSpace* X = x.space;
  if (!X || !X->disjoint) return std::nullopt;
  // pair index t < budget only reaches listing positions up to ~sqrt(2*budget)
  Budget L = 2;
  while (L * (L + 1) / 2 < budget) ++L;
  L += 2;
  std::vector<Word> xs = query(x, std::min(budget, L)), ys = query(y, std::min(budget, L));
  for (Budget t = 0; t < budget; ++t) {
    auto [i, j] = cantor_unpair(t);
    if (i >= xs.size() || j >= ys.size()) continue;
    if (X->disjoint(xs[i], ys[j], t + 1)) return std::pair{xs[i], ys[j]};
  }
  return std::nullopt;
}

// --- compact machinery ----------------------------------------------------

// A compact region given by a bounding box and a certified avoidance test.
struct CompactRegion {
  Box bound;                                 // contains the region
  std::function<bool(const Box&)> misses;    // certified: box ∩ K = ∅
};

// Semi-decide K ⊆ union of the given certified-inside tests by subdividing
// the bounding box.  The budget counts boxes processed.
inline SemiDecision cover_semidecide(const CompactRegion& K,
                                     const std::vector<std::function<bool(const Box&)>>& inside,
                                     Budget budget) {
  std::deque<Box> queue{K.bound};
  for (Budget step = 0; step < budget; ++step) {
    if (queue.empty()) return SemiDecision::Confirmed(step);
    Box bx = queue.front();
    queue.pop_front();
    if (K.misses && K.misses(bx)) continue;
    bool covered = false;
    for (const auto& f : inside)
      if (f(bx)) {
        covered = true;
        break;
      }
    if (covered) continue;
    auto [l, r] = box_split(bx);
    queue.push_back(l);
    queue.push_back(r);
  }
  return SemiDecision::Unknown(budget);
}

// Enumerate finite lists of naturals: k -> (length, packed indices).
inline std::vector<std::uint64_t> enumerate_index_list(std::uint64_t k) {
  auto [len, rest] = cantor_unpair(k);
  if (len == 0) return {};
  return cantor_untuple(rest, len);
}

// κ-name of a compact region: lists fs-union codes (over the space's base)
// whose members are certified to cover K.  `seeds` supplies known-good
// covers early; the general enumeration makes the listing c.e.-complete.
inline Name kappa_name(SpacePtr X, CompactRegion K, std::vector<std::vector<Word>> seeds) {
  return Name{
      Discipline::CompactKappa, X.get(), [X, K = std::move(K), seeds = std::move(seeds)](Budget b) {
        std::vector<Word> out;
        for (Budget t = 0; t < b; ++t) {
          // dense steps sweep the seeds with growing verification budget; the
          // sparse tail dovetails the whole candidate enumeration
          std::uint64_t i, j;
          if (t % 64 == 63) {
            std::tie(i, j) = cantor_unpair(t / 64);
          } else {
            Budget d = t - t / 64;
            i = d % 8;
            j = d / 8;
          }
          std::vector<Word> cand;
          if (i < seeds.size()) {
            cand = seeds[i];
          } else {
            for (std::uint64_t idx : enumerate_index_list(i - seeds.size()))
              cand.push_back(X->enumerate(idx));
          }
          if (!X->box_inside_code) continue;
          std::vector<std::function<bool(const Box&)>> inside;
          inside.reserve(cand.size());
          for (const Word& w : cand)
            inside.push_back([X, w](const Box& bx) { return X->box_inside_code(w, bx); });
          if (cover_semidecide(K, inside, 16 * (j + 1)).confirmed) out.push_back(tuple(cand));
        }
        return dedup_listing(std::move(out));
      }};
}

// ψ⁻-name of the complement of a compact set from its κ-name: a base code u
// is listed once some listed cover has every member certified disjoint
// from nu(u).
inline Name compact_complement(SpacePtr X, const Name& k) {
  return Name{Discipline::ClosedPsiMinus, X.get(), [X, k](Budget b) {
                std::vector<Word> covers = query(k, 16 + b / 16), out;
                for (Budget t = 0; t < b; ++t) {
                  // dense steps pair early covers with the code sweep; the
                  // sparse tail restores the full dovetail
                  std::uint64_t i, j;
                  Budget db;
                  if (t % 64 == 63) {
                    std::tie(i, j) = cantor_unpair(t / 64);
                    db = t + 1;
                  } else {
                    Budget d = t - t / 64;
                    i = d / 4;
                    j = d % 4;
                    db = 16 + d / 32;
                  }
                  if (j >= covers.size()) continue;
                  Word u = X->enumerate(i);
                  bool all_disjoint = true;
                  for (const Word& m : scan_wrapped(covers[j]))
                    if (!X->disjoint || !X->disjoint(m, u, db)) {
                      all_disjoint = false;
                      break;
                    }
                  if (all_disjoint) out.push_back(u);
                }
                return dedup_listing(std::move(out));
              }};
}

// --- subspace -------------------------------------------------------------

// Same codes, interpretations intersected with the region.  Tagged points of
// the subspace are the ambient tagged points satisfying `in_region`.
inline SpacePtr subspace(SpacePtr X, std::function<bool(const RatVec&)> in_region,
                         std::string id) {
  auto S = std::make_shared<EffectiveSpace>(*X);
  S->id = std::move(id);
  auto member = X->member;
  S->member = [X, member, in_region](const Word& w, const RatVec& p) {
    return in_region(p) && member && member(w, p);
  };
  // subset/disjoint certificates remain sound after intersecting with B
  return S;
}

// --- product --------------------------------------------------------------

inline SpacePtr product_space(SpacePtr X1, SpacePtr X2) {
  auto P = std::make_shared<EffectiveSpace>();
  P->id = X1->id + "*" + X2->id;
  P->tag_dim = X1->tag_dim + X2->tag_dim;
  std::size_t d1 = X1->tag_dim;

  auto split_code = [X1, X2](const Word& w) -> std::optional<std::pair<Word, Word>> {
    auto parts = scan_wrapped(w);
    if (parts.size() != 2 || tuple(parts) != w) return std::nullopt;
    if (!X1->dom(parts[0]) || !X2->dom(parts[1])) return std::nullopt;
    return std::pair{parts[0], parts[1]};
  };
  auto split_point = [d1](const RatVec& p) {
    return std::pair{RatVec(p.begin(), p.begin() + d1), RatVec(p.begin() + d1, p.end())};
  };

  P->dom = [split_code](const Word& w) { return split_code(w).has_value(); };
  P->enumerate = [X1, X2](std::uint64_t k) {
    auto [i, j] = cantor_unpair(k);
    return tuple2(X1->enumerate(i), X2->enumerate(j));
  };
  P->member = [X1, X2, split_code, split_point](const Word& w, const RatVec& p) {
    auto c = split_code(w);
    if (!c || !X1->member || !X2->member) return false;
    auto [p1, p2] = split_point(p);
    return X1->member(c->first, p1) && X2->member(c->second, p2);
  };
  if (X1->subset && X2->subset) {
    P->subset = [X1, X2, split_code](const Word& u, const Word& v) {
      auto cu = split_code(u), cv = split_code(v);
      return cu && cv && X1->subset(cu->first, cv->first) && X2->subset(cu->second, cv->second);
    };
  }
  if (X1->disjoint && X2->disjoint) {
    P->disjoint = [X1, X2, split_code](const Word& u, const Word& v, Budget b) {
      auto cu = split_code(u), cv = split_code(v);
      if (!cu || !cv) return false;
      return X1->disjoint(cu->first, cv->first, b) || X2->disjoint(cu->second, cv->second, b);
    };
  }
  P->hausdorff = X1->hausdorff && X2->hausdorff;
  if (X1->local_codes && X2->local_codes) {
    P->local_codes = [X1, X2, split_point](const RatVec& p, Budget b) {
      auto [p1, p2] = split_point(p);
      auto l1 = X1->local_codes(p1, b), l2 = X2->local_codes(p2, b);
      std::vector<Word> out;
      for (std::size_t t = 0; t < std::min(l1.size(), l2.size()); ++t)
        out.push_back(tuple2(l1[t], l2[t]));
      return out;
    };
  }
  return P;
}

// Pair two point names into a product point name.
inline Name pair_point_names(SpacePtr P, const Name& n1, const Name& n2) {
  return Name{Discipline::PointDelta, P.get(), [P, n1, n2](Budget b) {
                std::vector<Word> a = query(n1, b), c = query(n2, b), out;
                for (Budget t = 0; t < b; ++t) {
                  auto [i, j] = cantor_unpair(t);
                  if (i < a.size() && j < c.size()) out.push_back(tuple2(a[i], c[j]));
                }
                return dedup_listing(std::move(out));
              }};
}

// Project a product point name onto one factor.
inline Name project_point_name(SpacePtr Xi, const Name& n, int which) {
  return Name{Discipline::PointDelta, Xi.get(), [Xi, n, which](Budget b) {
                std::vector<Word> out;
                for (const Word& w : query(n, b)) {
                  auto parts = scan_wrapped(w);
                  if (parts.size() == 2 && tuple(parts) == w) out.push_back(parts[which]);
                }
                return dedup_listing(std::move(out));
              }};
}

// --- predicate-space induction --------------------------------------------

// A predicate space: a point-separating subbase with notation lambda.
struct PredicateSpace {
  SpacePtr subbase;  // hooks interpreted against the subbase notation
};

// Induced space: base codes are ⋂-flavor finite-set codes over the subbase
// domain; the empty code denotes the whole carrier.
inline SpacePtr induce_from_predicate(const PredicateSpace& Z) {
  SpacePtr S = Z.subbase;
  auto X = std::make_shared<EffectiveSpace>();
  X->id = S->id + "^fs";
  X->tag_dim = S->tag_dim;
  X->dom = [S](const Word& w) { return fs_valid(w, S->dom); };
  X->enumerate = [S](std::uint64_t k) {
    std::vector<Word> members;
    for (std::uint64_t idx : enumerate_index_list(k)) members.push_back(S->enumerate(idx));
    return tuple(members);
  };
  X->member = [S](const Word& w, const RatVec& p) {
    if (!S->member) return false;
    for (const Word& m : scan_wrapped(w))
      if (!S->member(m, p)) return false;
    return true;  // vacuously true for the empty intersection (= whole space)
  };
  if (S->subset) {
    // formal refinement: every member of v contains some... conservative:
    // u ⊆ v when each member of v has a member of u inside it
    X->subset = [S](const Word& u, const Word& v) {
      auto us = scan_wrapped(u), vs = scan_wrapped(v);
      for (const Word& mv : vs) {
        bool ok = false;
        for (const Word& mu : us)
          if (S->subset(mu, mv)) {
            ok = true;
            break;
          }
        if (!ok) return false;
      }
      return true;
    };
  }
  if (S->disjoint) {
    X->disjoint = [S](const Word& u, const Word& v, Budget b) {
      for (const Word& mu : scan_wrapped(u))
        for (const Word& mv : scan_wrapped(v))
          if (S->disjoint(mu, mv, b)) return true;
      return false;
    };
  }
  X->hausdorff = S->hausdorff;
  if (S->local_codes) {
    X->local_codes = [S](const RatVec& p, Budget b) {
      std::vector<Word> out;
      for (const Word& w : S->local_codes(p, b)) out.push_back(tuple({w}));
      return out;
    };
  }
  return X;
}

// δ_Z → induced δ: emit singleton and pairwise ⋂-codes built from the listing.
inline Translator predicate_to_induced(SpacePtr induced) {
  return Translator{Discipline::PointDelta, Discipline::PointDelta, induced.get(),
                    [induced](const Name& n, Budget b) {
                      std::vector<Word> ws = query(n, b), out;
                      for (Budget t = 0; t < b; ++t) {
                        if (t < ws.size()) out.push_back(tuple({ws[t]}));
                        auto [i, j] = cantor_unpair(t);
                        if (i < ws.size() && j < ws.size()) out.push_back(tuple({ws[i], ws[j]}));
                      }
                      return dedup_listing(std::move(out));
                    }};
}

// induced δ → δ_Z: emit the members of every listed ⋂-code.
inline Translator induced_to_predicate(SpacePtr subbase) {
  return Translator{Discipline::PointDelta, Discipline::PointDelta, subbase.get(),
                    [subbase](const Name& n, Budget b) {
                      std::vector<Word> out;
                      for (const Word& w : query(n, b))
                        for (const Word& m : scan_wrapped(w)) out.push_back(m);
                      return dedup_listing(std::move(out));
                    }};
}

}  // namespace ctop
