#pragma once

// Exact rational scalars and vectors, plus the fixed total enumerations
// (naturals, integers, rationals, positive rationals) that every
// budget-indexed producer in this library is built on.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

namespace ctop {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;
using Budget = std::uint64_t;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat pow2(long k) {  // 2^k for any sign of k
  Rat q;
  if (k >= 0) {
    mpz_ui_pow_ui(q.get_num_mpz_t(), 2, static_cast<unsigned long>(k));
  } else {
    q = 1;
    mpz_ui_pow_ui(q.get_den_mpz_t(), 2, static_cast<unsigned long>(-k));
  }
  return q;
}

inline Rat sq_norm(const RatVec& v) {
  Rat s = 0;
  for (const Rat& x : v) s += x * x;
  return s;
}

inline Rat sq_dist(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rat d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Cantor pairing, used for all diagonal enumerations.

inline std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  return (a + b) * (a + b + 1) / 2 + b;
}

inline std::pair<std::uint64_t, std::uint64_t> cantor_unpair(std::uint64_t z) {
  // largest w with w(w+1)/2 <= z
  std::uint64_t w = static_cast<std::uint64_t>((std::sqrt(8.0 * static_cast<double>(z) + 1.0) - 1.0) / 2.0);
  while (w * (w + 1) / 2 > z) --w;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  std::uint64_t b = z - w * (w + 1) / 2;
  return {w - b, b};
}

// Unpack an index into n coordinates (right fold of cantor_unpair).
inline std::vector<std::uint64_t> cantor_untuple(std::uint64_t z, std::size_t n) {
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto [a, b] = cantor_unpair(z);
    out[i] = a;
    z = b;
  }
  out[n - 1] = z;
  return out;
}

// ---------------------------------------------------------------------------
// Fixed enumerations.  Deterministic, total, and lazily cached; the cache is
// guarded so concurrent readers are safe.

// 0, 1, -1, 2, -2, ...
inline mpz_class enumerate_integer(std::uint64_t k) {
  if (k == 0) return 0;
  mpz_class m((k + 1) / 2);
  return (k % 2 == 1) ? m : mpz_class(-m);
}

namespace detail {

struct RatTable {
  std::vector<Rat> all;       // every rational, each exactly once
  std::vector<Rat> positive;  // the positive ones, same relative order
  std::uint64_t next_pair = 0;
  std::mutex mu;

  void extend(std::size_t want_all, std::size_t want_pos) {
    std::scoped_lock lock(mu);
    while (all.size() < want_all || positive.size() < want_pos) {
      auto [a, b] = cantor_unpair(next_pair++);
      mpz_class num = enumerate_integer(a);
      mpz_class den(b + 1);
      if (mpz_class(gcd(num, den)) != 1 && num != 0) continue;
      if (num == 0 && den != 1) continue;
      Rat q(num, den);
      q.canonicalize();
      all.push_back(q);
      if (q > 0) positive.push_back(q);
    }
  }

  static RatTable& instance() {
    static RatTable t;
    return t;
  }
};

}  // namespace detail

inline Rat enumerate_rational(std::uint64_t k) {
  auto& t = detail::RatTable::instance();
  t.extend(k + 1, 0);
  std::scoped_lock lock(t.mu);
  return t.all[k];
}

inline Rat enumerate_positive_rational(std::uint64_t k) {
  auto& t = detail::RatTable::instance();
  t.extend(0, k + 1);
  std::scoped_lock lock(t.mu);
  return t.positive[k];
}

}  // namespace ctop
