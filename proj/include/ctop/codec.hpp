#pragma once

// Canonical codecs on words: binary naturals, signed rationals in lowest
// terms, and finite-set codes built from concatenated wrapped members.

#include <optional>
#include <set>

#include "ctop/word.hpp"

namespace ctop {

// --- naturals: binary numerals, no leading zero ("0" itself allowed) ------

inline Word nat_encode(const mpz_class& n) {
  return n.get_str(2);
}

inline bool nat_valid(const Word& w) {
  if (w.empty()) return false;
  if (w.size() > 1 && w[0] == '0') return false;
  for (char c : w)
    if (c != '0' && c != '1') return false;
  return true;
}

inline std::optional<mpz_class> nat_decode(const Word& w) {
  if (!nat_valid(w)) return std::nullopt;
  mpz_class n;
  n.set_str(w, 2);
  return n;
}

// --- rationals: [-] numerator "/" denominator, lowest terms, den >= 1 -----

inline Word rat_encode(const Rat& q) {
  Word out;
  mpz_class num = q.get_num(), den = q.get_den();
  if (num < 0) {
    out.push_back('-');
    num = -num;
  }
  out += nat_encode(num);
  out.push_back('/');
  out += nat_encode(den);
  return out;
}

inline std::optional<Rat> rat_decode(const Word& w) {
  std::size_t pos = 0;
  bool neg = false;
  if (pos < w.size() && w[pos] == '-') {
    neg = true;
    ++pos;
  }
  std::size_t slash = w.find('/', pos);
  if (slash == Word::npos) return std::nullopt;
  Word num_s = w.substr(pos, slash - pos);
  Word den_s = w.substr(slash + 1);
  auto num = nat_decode(num_s);
  auto den = nat_decode(den_s);
  if (!num || !den) return std::nullopt;
  if (*den == 0) return std::nullopt;
  if (neg && *num == 0) return std::nullopt;  // no "-0/..."
  if (gcd(*num, *den) != 1 && *num != 0) return std::nullopt;
  if (*num == 0 && *den != 1) return std::nullopt;
  Rat q(neg ? mpz_class(-*num) : *num, *den);
  q.canonicalize();
  return q;
}

inline bool rat_valid(const Word& w) { return rat_decode(w).has_value(); }

// Encode a vector of rationals as a tuple of literals.
inline Word ratvec_encode(const RatVec& v) {
  std::vector<Word> parts;
  parts.reserve(v.size());
  for (const Rat& q : v) parts.push_back(rat_encode(q));
  return tuple(parts);
}

inline std::optional<RatVec> ratvec_decode(const Word& w, std::size_t n) {
  std::vector<Word> parts = scan_wrapped(w);
  if (parts.size() != n) return std::nullopt;
  // Reject stray symbols between blocks: re-tupling must reproduce the input.
  if (tuple(parts) != w) return std::nullopt;
  RatVec out;
  out.reserve(n);
  for (const Word& p : parts) {
    auto q = rat_decode(p);
    if (!q) return std::nullopt;
    out.push_back(*q);
  }
  return out;
}

// --- finite-set codes -----------------------------------------------------

enum class FsFlavor { Union, Intersection };

struct FsCode {
  Word code;        // concatenation of wrapped members; "" is the empty set
  FsFlavor flavor;  // interpretation downstream only
};

using DomDecider = std::function<bool(const Word&)>;

inline std::optional<FsCode> fs_encode(const std::vector<Word>& members, FsFlavor flavor,
                                       const DomDecider& dom) {
  for (const Word& m : members)
    if (!dom(m)) return std::nullopt;
  return FsCode{tuple(members), flavor};
}

// Decode to the member *set*; invalid if any scanned member fails `dom` or
// the code contains symbols outside the wrapped blocks.
inline std::optional<std::set<Word>> fs_decode(const FsCode& c, const DomDecider& dom) {
  std::vector<Word> members = scan_wrapped(c.code);
  if (tuple(members) != c.code) return std::nullopt;
  std::set<Word> out;
  for (const Word& m : members) {
    if (!dom(m)) return std::nullopt;
    out.insert(m);
  }
  return out;
}

inline bool fs_valid(const Word& code, const DomDecider& dom) {
  return fs_decode(FsCode{code, FsFlavor::Union}, dom).has_value();
}

}  // namespace ctop
