#pragma once

// Certified decisions about ball images under a fixed family of rational
// maps.  Positive answers come from exhaustive interval covering of the
// closed source ball; negative answers from exact rational witness points.
// Queries whose true margin is zero may stay Unknown forever — every caller
// here needs only enumerate-when-true behavior.

#include <deque>
#include <optional>
#include <variant>

#include "ctop/ball.hpp"

namespace ctop {

// --- the map family -------------------------------------------------------

struct MapFamily;

struct MapIdentity {
  std::size_t n;
};
struct MapTranslation {  // T_a(x) = x - a
  RatVec a;
};
struct MapScaling {  // S_e(x) = e x
  Rat eps;
  std::size_t n;
};
struct MapBallToSpace {  // h_w = h ∘ S_{1/eps} ∘ T_q, with h(x)=x/(1-|x|^2)
  RationalBall w;
};
struct MapStereographic {  // s_r(x,t) = x/(1 - r t), input dim n+1 -> n
  int pole;                // +1 or -1
  std::size_t n;
};
struct MapStereographicInv {  // s_r^{-1}(y) = (2y, r(|y|^2-1))/(|y|^2+1)
  int pole;
  std::size_t n;  // input dim n -> n+1
};
enum class CircleChart { FPlus, FMinus, GPlus, GMinus };
struct MapCircleHalfChart {  // f±(x,y)=x, g±(x,y)=y : dim 2 -> 1
  CircleChart which;
};
struct MapProjectiveChart {  // drop coordinate i after dividing by it
  std::size_t i;             // 0-based, i <= n
  std::size_t n;             // input dim n+1 -> n
};

struct MapFamily {
  std::variant<MapIdentity, MapTranslation, MapScaling, MapBallToSpace, MapStereographic,
               MapStereographicInv, MapCircleHalfChart, MapProjectiveChart,
               std::vector<MapFamily>>
      kind;

  static MapFamily identity(std::size_t n) { return {MapIdentity{n}}; }
  static MapFamily translation(RatVec a) { return {MapTranslation{std::move(a)}}; }
  static MapFamily scaling(Rat e, std::size_t n) { return {MapScaling{std::move(e), n}}; }
  static MapFamily ball_to_space(RationalBall w) { return {MapBallToSpace{std::move(w)}}; }
  static MapFamily stereographic(int pole, std::size_t n) { return {MapStereographic{pole, n}}; }
  static MapFamily stereographic_inv(int pole, std::size_t n) {
    return {MapStereographicInv{pole, n}};
  }
  static MapFamily circle_half_chart(CircleChart c) { return {MapCircleHalfChart{c}}; }
  static MapFamily projective_chart(std::size_t i, std::size_t n) {
    return {MapProjectiveChart{i, n}};
  }
  static MapFamily composition(std::vector<MapFamily> fs) { return {std::move(fs)}; }
};

inline std::size_t map_in_dim(const MapFamily& m);
inline std::size_t map_out_dim(const MapFamily& m);

inline std::size_t map_in_dim(const MapFamily& m) {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, MapIdentity>) return k.n;
        else if constexpr (std::is_same_v<T, MapTranslation>) return k.a.size();
        else if constexpr (std::is_same_v<T, MapScaling>) return k.n;
        else if constexpr (std::is_same_v<T, MapBallToSpace>) return k.w.dim();
        else if constexpr (std::is_same_v<T, MapStereographic>) return k.n + 1;
        else if constexpr (std::is_same_v<T, MapStereographicInv>) return k.n;
        else if constexpr (std::is_same_v<T, MapCircleHalfChart>) return 2;
        else if constexpr (std::is_same_v<T, MapProjectiveChart>) return k.n + 1;
        else return map_in_dim(k.front());
      },
      m.kind);
}

inline std::size_t map_out_dim(const MapFamily& m) {
  return std::visit(
      [](const auto& k) -> std::size_t {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, MapIdentity>) return k.n;
        else if constexpr (std::is_same_v<T, MapTranslation>) return k.a.size();
        else if constexpr (std::is_same_v<T, MapScaling>) return k.n;
        else if constexpr (std::is_same_v<T, MapBallToSpace>) return k.w.dim();
        else if constexpr (std::is_same_v<T, MapStereographic>) return k.n;
        else if constexpr (std::is_same_v<T, MapStereographicInv>) return k.n + 1;
        else if constexpr (std::is_same_v<T, MapCircleHalfChart>) return 1;
        else if constexpr (std::is_same_v<T, MapProjectiveChart>) return k.n;
        else return map_out_dim(k.back());
      },
      m.kind);
}

// Exact evaluation at a rational point; nullopt when the point is outside
// the map's (open) domain, e.g. a vanishing denominator.
inline std::optional<RatVec> map_exact(const MapFamily& m, const RatVec& x);

// Interval enclosure of the image of a box; nullopt when the box cannot be
// certified inside the domain (denominator interval straddles 0).
inline std::optional<Box> map_box(const MapFamily& m, const Box& b);

namespace detail {

inline std::optional<RatVec> h_exact(const RatVec& x) {  // x / (1 - |x|^2)
  Rat d = 1 - sq_norm(x);
  if (d == 0) return std::nullopt;
  RatVec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / d;
  return y;
}

inline std::optional<Box> h_box(const Box& b) {
  RatInterval d = RatInterval{Rat(1), Rat(1)} - box_sq_norm(b);
  auto r = recip(d);
  if (!r) return std::nullopt;
  Box y(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) y[i] = b[i] * *r;
  return y;
}

}  // namespace detail

inline std::optional<RatVec> map_exact(const MapFamily& m, const RatVec& x) {
  using R = std::optional<RatVec>;
  return std::visit(
      [&x](const auto& k) -> R {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, MapIdentity>) {
          return x;
        } else if constexpr (std::is_same_v<T, MapTranslation>) {
          RatVec y(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - k.a[i];
          return y;
        } else if constexpr (std::is_same_v<T, MapScaling>) {
          RatVec y(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) y[i] = k.eps * x[i];
          return y;
        } else if constexpr (std::is_same_v<T, MapBallToSpace>) {
          RatVec t(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) t[i] = (x[i] - k.w.center[i]) / k.w.radius;
          return detail::h_exact(t);
        } else if constexpr (std::is_same_v<T, MapStereographic>) {
          Rat d = 1 - Rat(k.pole) * x.back();
          if (d == 0) return std::nullopt;
          RatVec y(x.size() - 1);
          for (std::size_t i = 0; i + 1 < x.size(); ++i) y[i] = x[i] / d;
          return y;
        } else if constexpr (std::is_same_v<T, MapStereographicInv>) {
          Rat n2 = sq_norm(x);
          Rat d = n2 + 1;
          RatVec y(x.size() + 1);
          for (std::size_t i = 0; i < x.size(); ++i) y[i] = 2 * x[i] / d;
          y[x.size()] = Rat(k.pole) * (n2 - 1) / d;
          return y;
        } else if constexpr (std::is_same_v<T, MapCircleHalfChart>) {
          bool f = k.which == CircleChart::FPlus || k.which == CircleChart::FMinus;
          return RatVec{f ? x[0] : x[1]};
        } else if constexpr (std::is_same_v<T, MapProjectiveChart>) {
          if (x[k.i] == 0) return std::nullopt;
          RatVec y;
          y.reserve(x.size() - 1);
          for (std::size_t j = 0; j < x.size(); ++j)
            if (j != k.i) y.push_back(x[j] / x[k.i]);
          return y;
        } else {
          RatVec cur = x;
          for (const MapFamily& f : k) {
            auto next = map_exact(f, cur);
            if (!next) return std::nullopt;
            cur = *next;
          }
          return cur;
        }
      },
      m.kind);
}

inline std::optional<Box> map_box(const MapFamily& m, const Box& b) {
  using R = std::optional<Box>;
  return std::visit(
      [&b](const auto& k) -> R {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, MapIdentity>) {
          return b;
        } else if constexpr (std::is_same_v<T, MapTranslation>) {
          Box y(b.size());
          for (std::size_t i = 0; i < b.size(); ++i) y[i] = b[i] - k.a[i];
          return y;
        } else if constexpr (std::is_same_v<T, MapScaling>) {
          Box y(b.size());
          for (std::size_t i = 0; i < b.size(); ++i) y[i] = k.eps * b[i];
          return y;
        } else if constexpr (std::is_same_v<T, MapBallToSpace>) {
          Box t(b.size());
          Rat inv = 1 / k.w.radius;
          for (std::size_t i = 0; i < b.size(); ++i) t[i] = inv * (b[i] - k.w.center[i]);
          return detail::h_box(t);
        } else if constexpr (std::is_same_v<T, MapStereographic>) {
          RatInterval d = RatInterval{Rat(1), Rat(1)} - Rat(k.pole) * b.back();
          auto r = recip(d);
          if (!r) return std::nullopt;
          Box y(b.size() - 1);
          for (std::size_t i = 0; i + 1 < b.size(); ++i) y[i] = b[i] * *r;
          return y;
        } else if constexpr (std::is_same_v<T, MapStereographicInv>) {
          RatInterval n2 = box_sq_norm(b);
          auto r = recip(n2 + Rat(1));  // always succeeds, n2 >= 0
          if (!r) return std::nullopt;
          Box y(b.size() + 1);
          for (std::size_t i = 0; i < b.size(); ++i) y[i] = (Rat(2) * b[i]) * *r;
          y[b.size()] = (Rat(k.pole) * (n2 - Rat(1))) * *r;
          return y;
        } else if constexpr (std::is_same_v<T, MapCircleHalfChart>) {
          bool f = k.which == CircleChart::FPlus || k.which == CircleChart::FMinus;
          return Box{f ? b[0] : b[1]};
        } else if constexpr (std::is_same_v<T, MapProjectiveChart>) {
          auto r = recip(b[k.i]);
          if (!r) return std::nullopt;
          Box y;
          y.reserve(b.size() - 1);
          for (std::size_t j = 0; j < b.size(); ++j)
            if (j != k.i) y.push_back(b[j] * *r);
          return y;
        } else {
          Box cur = b;
          for (const MapFamily& f : k) {
            auto next = map_box(f, cur);
            if (!next) return std::nullopt;
            cur = *next;
          }
          return cur;
        }
      },
      m.kind);
}

// --- the containment query ------------------------------------------------

enum class Relation { ImageInside, ImageDisjoint };
enum class Verdict { Holds, Fails, Unknown };

struct ContainmentQuery {
  RationalBall source;
  MapFamily map;
  RationalBall target;
  Relation relation;
};

// Branch-and-bound over rational boxes covering the closed source ball.
// Holds: every surviving box has its image enclosure certified inside
// (resp. outside) the target.  Fails: an exact rational witness strictly
// inside the open source ball violates the relation.  The budget counts
// boxes processed; `gap` is the subdivision floor.
inline Verdict image_containment(const ContainmentQuery& q, const Rat& gap, Budget budget) {
  Rat r2 = q.target.radius * q.target.radius;
  auto certified = [&](const Box& img) {
    return q.relation == Relation::ImageInside ? box_in_ball(img, q.target)
                                               : box_outside_ball(img, q.target);
  };
  auto violates = [&](const RatVec& y) {
    Rat d2 = sq_dist(y, q.target.center);
    return q.relation == Relation::ImageInside ? d2 >= r2 : d2 < r2;
  };

  std::deque<Box> queue;
  queue.push_back(ball_box(q.source));
  bool gave_up = false;
  for (Budget step = 0; step < budget; ++step) {
    if (queue.empty()) return gave_up ? Verdict::Unknown : Verdict::Holds;
    Box bx = queue.front();
    queue.pop_front();
    if (!box_meets_closed_ball(bx, q.source)) continue;
    auto img = map_box(q.map, bx);
    if (img && certified(*img)) continue;
    // witness attempt at the midpoint, if strictly inside the open source
    RatVec mid = box_mid(bx);
    if (ball_contains(q.source, mid)) {
      if (auto y = map_exact(q.map, mid); y && violates(*y)) return Verdict::Fails;
    }
    if (box_max_width(bx) <= gap) {
      gave_up = true;  // cannot refine further; Holds is out of reach
      continue;
    }
    auto [left, right] = box_split(bx);
    queue.push_back(left);
    queue.push_back(right);
  }
  return Verdict::Unknown;
}

inline Verdict image_containment(const ContainmentQuery& q, Budget budget) {
  return image_containment(q, pow2(-20), budget);
}

}  // namespace ctop
