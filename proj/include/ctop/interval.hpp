#pragma once

// Exact rational interval arithmetic: closed intervals with rational
// endpoints, boxes, and monotone square-root enclosures.  The only
// approximation anywhere is the sqrt enclosure, whose width shrinks with the
// requested precision; everything else is exact.

#include <optional>

#include "ctop/rational.hpp"

namespace ctop {

struct RatInterval {
  Rat lo, hi;  // closed interval [lo, hi], lo <= hi

  static RatInterval point(const Rat& q) { return {q, q}; }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains(const Rat& q) const { return lo <= q && q <= hi; }
};

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
inline RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}
inline RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  Rat lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rat hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return {lo, hi};
}

inline RatInterval operator*(const Rat& c, const RatInterval& a) {
  return c >= 0 ? RatInterval{c * a.lo, c * a.hi} : RatInterval{c * a.hi, c * a.lo};
}

inline RatInterval operator+(const RatInterval& a, const Rat& c) { return {a.lo + c, a.hi + c}; }
inline RatInterval operator-(const RatInterval& a, const Rat& c) { return {a.lo - c, a.hi - c}; }

inline RatInterval sq(const RatInterval& a) {
  if (a.lo >= 0) return {a.lo * a.lo, a.hi * a.hi};
  if (a.hi <= 0) return {a.hi * a.hi, a.lo * a.lo};
  return {Rat(0), std::max(a.lo * a.lo, a.hi * a.hi)};
}

// Reciprocal; fails when 0 is inside.
inline std::optional<RatInterval> recip(const RatInterval& a) {
  if (a.lo <= 0 && a.hi >= 0) return std::nullopt;
  return RatInterval{1 / a.hi, 1 / a.lo};
}

inline std::optional<RatInterval> operator/(const RatInterval& a, const RatInterval& b) {
  auto r = recip(b);
  if (!r) return std::nullopt;
  return a * *r;
}

// --- square roots ---------------------------------------------------------

// Rational lower/upper bounds on sqrt(q) for q >= 0, within 2^-prec:
// sqrt(n/d) = sqrt(n*d*4^k) / (d*2^k), bracketed by the integer square root.
inline RatInterval sqrt_enclosure_rat(const Rat& q, long prec) {
  if (q <= 0) return {Rat(0), Rat(0)};  // caller must pre-clamp domains
  long k = prec < 0 ? 1 : prec + 1;
  mpz_class num = q.get_num(), den = q.get_den();
  mpz_class scaled = num * den;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * static_cast<unsigned long>(k));
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  mpz_class denom = den;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(k));
  Rat lo(root, denom), hi(root + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

// Enclosure of sqrt over an interval; the input is clamped at 0 from below
// (used only where the true argument is known to be >= 0).
inline RatInterval sqrt_enclosure(const RatInterval& a, long prec) {
  Rat lo_arg = a.lo < 0 ? Rat(0) : a.lo;
  Rat hi_arg = a.hi < 0 ? Rat(0) : a.hi;
  return {sqrt_enclosure_rat(lo_arg, prec).lo, sqrt_enclosure_rat(hi_arg, prec).hi};
}

// --- boxes ----------------------------------------------------------------

using Box = std::vector<RatInterval>;

inline Box box_of_point(const RatVec& p) {
  Box b;
  b.reserve(p.size());
  for (const Rat& q : p) b.push_back(RatInterval::point(q));
  return b;
}

inline RatVec box_mid(const Box& b) {
  RatVec m;
  m.reserve(b.size());
  for (const auto& iv : b) m.push_back(iv.mid());
  return m;
}

inline Rat box_max_width(const Box& b) {
  Rat w = 0;
  for (const auto& iv : b) w = std::max(w, iv.width());
  return w;
}

// Interval enclosure of the squared euclidean norm.
inline RatInterval box_sq_norm(const Box& b) {
  RatInterval s{Rat(0), Rat(0)};
  for (const auto& iv : b) s = s + sq(iv);
  return s;
}

// Enclosure of squared distance to a rational point.
inline RatInterval box_sq_dist(const Box& b, const RatVec& c) {
  RatInterval s{Rat(0), Rat(0)};
  for (std::size_t i = 0; i < b.size(); ++i) s = s + sq(b[i] - c[i]);
  return s;
}

// Split the widest coordinate in half.
inline std::pair<Box, Box> box_split(const Box& b) {
  std::size_t k = 0;
  for (std::size_t i = 1; i < b.size(); ++i)
    if (b[i].width() > b[k].width()) k = i;
  Box left = b, right = b;
  Rat m = b[k].mid();
  left[k].hi = m;
  right[k].lo = m;
  return {left, right};
}

}  // namespace ctop
