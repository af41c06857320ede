#pragma once

// Symbol-level layer: the fixed alphabet, the wrapping function and its
// scanner, tupling, and budget-indexed word streams.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctop/rational.hpp"

namespace ctop {

// Alphabet Sigma = {0, 1, -, /, #}.
inline constexpr char kAlphabet[] = {'0', '1', '-', '/', '#'};
inline constexpr std::size_t kAlphabetSize = 5;

using Word = std::string;

inline bool is_symbol(char c) {
  return c == '0' || c == '1' || c == '-' || c == '/' || c == '#';
}

inline bool is_word(const Word& w) {
  return std::all_of(w.begin(), w.end(), is_symbol);
}

// Enumeration of Sigma*: index 0 -> empty word, then words in shortlex order.
inline Word enumerate_word(std::uint64_t k) {
  // shortlex: count words of length < L is (5^L - 1) / 4
  std::uint64_t len = 0, count = 1, offset = 0;
  while (offset + count <= k) {
    offset += count;
    count *= kAlphabetSize;
    ++len;
  }
  std::uint64_t idx = k - offset;
  Word w(len, '0');
  for (std::size_t i = len; i-- > 0;) {
    w[i] = kAlphabet[idx % kAlphabetSize];
    idx /= kAlphabetSize;
  }
  return w;
}

// wrap(a1...ak) = 110 a1 0 a2 0 ... ak 0 11; wrap("") = "11011".
inline Word wrap(const Word& u) {
  Word out = "110";
  for (char c : u) {
    out.push_back(c);
    out.push_back('0');
  }
  out += "11";
  return out;
}

namespace detail {

// Try to parse a wrapped block starting exactly at position `pos`.
// On success returns the payload and sets `end` one past the block.
inline std::optional<Word> parse_wrapped_at(const Word& w, std::size_t pos, std::size_t& end) {
  if (w.compare(pos, 3, "110") != 0) return std::nullopt;
  std::size_t p = pos + 3;
  Word payload;
  for (;;) {
    if (p + 1 < w.size() + 1 && w.compare(p, 2, "11") == 0) {
      end = p + 2;
      return payload;
    }
    if (p + 1 >= w.size()) return std::nullopt;
    char a = w[p];
    if (w[p + 1] != '0') return std::nullopt;
    payload.push_back(a);
    p += 2;
  }
}

}  // namespace detail

// Every u with iota(u) occurring as a subword, in order of occurrence.
// Blocks cannot overlap, so after a hit the scan resumes past the block.
inline std::vector<Word> scan_wrapped(const Word& w) {
  std::vector<Word> out;
  std::size_t pos = 0;
  while (pos + 5 <= w.size()) {
    std::size_t end = 0;
    if (auto u = detail::parse_wrapped_at(w, pos, end)) {
      out.push_back(*u);
      pos = end;
    } else {
      ++pos;
    }
  }
  return out;
}

// <u1, ..., un> = iota(u1) ... iota(un)
inline Word tuple(const std::vector<Word>& parts) {
  Word out;
  for (const Word& p : parts) out += wrap(p);
  return out;
}

inline Word tuple2(const Word& a, const Word& b) { return tuple({a, b}); }

// ---------------------------------------------------------------------------
// WordStream: a deterministic prefix-monotone producer of symbols.  The
// producer maps a budget to a finite prefix; the same budget always yields
// the same prefix and larger budgets extend it.

class WordStream {
 public:
  WordStream() = default;
  explicit WordStream(std::function<Word(Budget)> producer) : producer_(std::move(producer)) {}

  Word prefix(Budget b) const { return producer_ ? producer_(b) : Word{}; }

  static WordStream constant(Word w) {
    return WordStream([w = std::move(w)](Budget b) {
      return w.substr(0, std::min<std::size_t>(w.size(), b));
    });
  }

  // Periodic repetition of a block, e.g. "01" -> 010101...
  static WordStream repeat(Word block) {
    if (block.empty()) throw std::invalid_argument("repeat: empty block");
    return WordStream([block = std::move(block)](Budget b) {
      Word out;
      out.reserve(b);
      while (out.size() < b) out += block;
      out.resize(b);
      return out;
    });
  }

  friend WordStream interleave(const WordStream& p, const WordStream& q) {
    return WordStream([p, q](Budget b) {
      Word pp = p.prefix(b), qq = q.prefix(b);
      Word out;
      out.reserve(b);
      for (std::size_t i = 0; out.size() < b; ++i) {
        if (i < pp.size() && out.size() < b) out.push_back(pp[i]);
        if (i < qq.size() && out.size() < b) out.push_back(qq[i]);
        if (i >= pp.size() && i >= qq.size()) break;
      }
      return out;
    });
  }

  // <u, p> = iota(u) p
  friend WordStream tuple_mixed(const Word& u, const WordStream& p) {
    Word head = wrap(u);
    return WordStream([head, p](Budget b) {
      if (b <= head.size()) return head.substr(0, b);
      return head + p.prefix(b - head.size());
    });
  }

 private:
  std::function<Word(Budget)> producer_;
};

}  // namespace ctop
