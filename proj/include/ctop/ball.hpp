#pragma once

// Rational balls in R^n: the base atoms of every euclidean notation, their
// exact predicates, their codec, and the printable literal grammar
// B(c1,...,cn;r).

#include <optional>
#include <sstream>

#include "ctop/codec.hpp"
#include "ctop/interval.hpp"

namespace ctop {

struct RationalBall {
  RatVec center;
  Rat radius;  // > 0

  std::size_t dim() const { return center.size(); }
};

// Exact: B(q1,e1) subset of B(q2,e2)  <=>  |q1-q2| <= e2 - e1.
inline bool ball_subset(const RationalBall& inner, const RationalBall& outer) {
  Rat d = outer.radius - inner.radius;
  if (d < 0) return false;
  return sq_dist(inner.center, outer.center) <= d * d;
}

// Exact: open balls disjoint  <=>  |q1-q2| >= e1 + e2.
inline bool ball_disjoint(const RationalBall& u, const RationalBall& v) {
  Rat s = u.radius + v.radius;
  return sq_dist(u.center, v.center) >= s * s;
}

// Exact open membership: |p - c| < r.
inline bool ball_contains(const RationalBall& b, const RatVec& p) {
  return sq_dist(p, b.center) < b.radius * b.radius;
}

// Closed bounding box of the ball.
inline Box ball_box(const RationalBall& b) {
  Box out;
  out.reserve(b.dim());
  for (const Rat& c : b.center) out.push_back({c - b.radius, c + b.radius});
  return out;
}

// Does the (closed) box lie inside the open ball / outside the closed ball?
inline bool box_in_ball(const Box& bx, const RationalBall& b) {
  return box_sq_dist(bx, b.center).hi < b.radius * b.radius;
}
inline bool box_outside_ball(const Box& bx, const RationalBall& b) {
  return box_sq_dist(bx, b.center).lo >= b.radius * b.radius;
}
// Does the box intersect the closed ball at all?
inline bool box_meets_closed_ball(const Box& bx, const RationalBall& b) {
  return box_sq_dist(bx, b.center).lo <= b.radius * b.radius;
}

// --- codec: tuple of n+1 rational literals, last entry the radius ---------

inline Word ball_encode(const RationalBall& b) {
  std::vector<Word> parts;
  parts.reserve(b.dim() + 1);
  for (const Rat& c : b.center) parts.push_back(rat_encode(c));
  parts.push_back(rat_encode(b.radius));
  return tuple(parts);
}

inline std::optional<RationalBall> ball_decode(const Word& w, std::size_t n) {
  auto v = ratvec_decode(w, n + 1);
  if (!v) return std::nullopt;
  if (v->back() <= 0) return std::nullopt;
  RationalBall b;
  b.center.assign(v->begin(), v->end() - 1);
  b.radius = v->back();
  return b;
}

inline bool ball_valid(const Word& w, std::size_t n) { return ball_decode(w, n).has_value(); }

// --- printable literal: B(c1,...,cn;r) with nu_Q component literals -------

inline std::string ball_literal(const RationalBall& b) {
  std::ostringstream os;
  os << "B(";
  for (std::size_t i = 0; i < b.dim(); ++i) {
    if (i) os << ",";
    os << rat_encode(b.center[i]);
  }
  os << ";" << rat_encode(b.radius) << ")";
  return os.str();
}

inline std::optional<RationalBall> parse_ball_literal(const std::string& s) {
  if (s.size() < 4 || s.compare(0, 2, "B(") != 0 || s.back() != ')') return std::nullopt;
  std::string body = s.substr(2, s.size() - 3);
  std::size_t semi = body.find(';');
  if (semi == std::string::npos) return std::nullopt;
  std::string centers = body.substr(0, semi), rad = body.substr(semi + 1);
  RationalBall b;
  std::size_t pos = 0;
  while (pos <= centers.size()) {
    std::size_t comma = centers.find(',', pos);
    std::string tok = centers.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto q = rat_decode(tok);
    if (!q) return std::nullopt;
    b.center.push_back(*q);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  auto r = rat_decode(rad);
  if (!r || *r <= 0) return std::nullopt;
  b.radius = *r;
  return b;
}

// --- fixed enumeration of all rational balls in dimension n ---------------

inline RationalBall enumerate_ball(std::size_t n, std::uint64_t k) {
  auto idx = cantor_untuple(k, n + 1);
  RationalBall b;
  b.center.reserve(n);
  for (std::size_t i = 0; i < n; ++i) b.center.push_back(enumerate_rational(idx[i]));
  b.radius = enumerate_positive_rational(idx[n]);
  return b;
}

}  // namespace ctop
