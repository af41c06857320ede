#pragma once

// Budgeted names, semi-decisions, translators, and the fair dovetailing
// scheduler.  A name is a pure producer: budget -> finite ordered word list,
// prefix-monotone in the budget.  No live processes anywhere.

#include <array>
#include <unordered_set>

#include "ctop/codec.hpp"

namespace ctop {

struct EffectiveSpace;  // defined in espace.hpp

enum class Discipline {
  PointDelta,
  OpenTheta,
  ClosedPsi,
  ClosedPsiMinus,
  CompactKappa,
};

struct Name {
  Discipline discipline;
  const EffectiveSpace* space = nullptr;
  std::function<std::vector<Word>(Budget)> producer;
};

inline std::vector<Word> query(const Name& n, Budget budget) {
  return n.producer ? n.producer(budget) : std::vector<Word>{};
}

// Drop repeated words, keeping first occurrences; preserves prefix-monotonicity.
inline std::vector<Word> dedup_listing(std::vector<Word> ws) {
  std::unordered_set<Word> seen;
  std::vector<Word> out;
  for (auto& w : ws)
    if (seen.insert(w).second) out.push_back(std::move(w));
  return out;
}

inline Name constant_name(Discipline d, const EffectiveSpace* space, std::vector<Word> words) {
  return Name{d, space, [words = std::move(words)](Budget b) {
                std::vector<Word> out(words.begin(),
                                      words.begin() + std::min<std::size_t>(words.size(), b));
                return out;
              }};
}

// --- semi-decisions -------------------------------------------------------

struct SemiDecision {
  bool confirmed;
  Budget at;  // confirmation step, or the budget at which the query gave up

  static SemiDecision Confirmed(Budget step) { return {true, step}; }
  static SemiDecision Unknown(Budget budget) { return {false, budget}; }
};

// Confirmed iff some word appears in both listings within the budget.
// Sound whenever both names are sound for their disciplines.
inline SemiDecision member_semidecide(const Name& x, const Name& W, Budget budget) {
  auto xs = query(x, budget);
  auto ws = query(W, budget);
  std::unordered_set<Word> wset(ws.begin(), ws.end());
  for (const Word& w : xs)
    if (wset.count(w)) return SemiDecision::Confirmed(budget);
  return SemiDecision::Unknown(budget);
}

// --- translators ----------------------------------------------------------

struct Translator {
  Discipline source_discipline;
  Discipline target_discipline;
  const EffectiveSpace* target_space = nullptr;
  // prefix-monotone in budget whenever the input name is
  std::function<std::vector<Word>(const Name&, Budget)> transducer;
};

struct ContractViolation : std::logic_error {
  using std::logic_error::logic_error;
};

inline Name apply_translator(const Translator& t, const Name& n) {
  if (n.discipline != t.source_discipline)
    throw ContractViolation("translator applied to a name of the wrong discipline");
  return Name{t.target_discipline, t.target_space,
              [t, n](Budget b) { return t.transducer(n, b); }};
}

inline Translator identity_translator(Discipline d, const EffectiveSpace* space) {
  return Translator{d, d, space, [](const Name& n, Budget b) { return query(n, b); }};
}

inline Translator compose(const Translator& first, const Translator& second) {
  if (first.target_discipline != second.source_discipline)
    throw ContractViolation("translator composition discipline mismatch");
  return Translator{first.source_discipline, second.target_discipline, second.target_space,
                    [first, second](const Name& n, Budget b) {
                      return second.transducer(apply_translator(first, n), b);
                    }};
}

// --- fair dovetailing -----------------------------------------------------

// A task source answers (task index, per-task budget) queries; it must be a
// pure function of its arguments and monotone in the budget.
using TaskSource = std::function<SemiDecision(std::uint64_t, Budget)>;

struct TaskEvent {
  std::uint64_t task;
  Budget confirmed_at;  // per-task step at which the task confirmed
  Budget global_step;   // cumulative scheduler steps consumed when emitted
};

// Round r queries tasks 0..r with per-task budget r, charging r+1 steps per
// query.  Every task that confirms at cost c emits its event once the global
// budget reaches dovetail_bound(task, c).
inline std::vector<TaskEvent> dovetail(const TaskSource& tasks, Budget budget) {
  std::vector<TaskEvent> events;
  std::unordered_set<std::uint64_t> done;
  Budget consumed = 0;
  for (Budget r = 0; consumed < budget; ++r) {
    for (std::uint64_t k = 0; k <= r; ++k) {
      consumed += r + 1;
      if (consumed > budget) return events;
      if (done.count(k)) continue;
      SemiDecision s = tasks(k, r);
      if (s.confirmed) {
        done.insert(k);
        events.push_back({k, s.at, consumed});
      }
    }
  }
  return events;
}

// A budget sufficient for task `k` confirming at per-task cost `c` to emit:
// the full cost of rounds 0..max(k,c).
inline Budget dovetail_bound(std::uint64_t k, Budget c) {
  Budget m = std::max<Budget>(k, c);
  return (m + 1) * (m + 1) * (m + 2);  // >= sum of (r+1)^2 for r <= m, plus slack
}

}  // namespace ctop
