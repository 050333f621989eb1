#ifndef GSEL_MATCH_HPP
#define GSEL_MATCH_HPP

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsel/games.hpp"
#include "gsel/strategy.hpp"

namespace gsel {

struct MatchOutcome {
  double total_row = 0.0;  // first strategy
  double total_col = 0.0;  // second strategy
  int rounds = 0;

  MatchOutcome Swapped() const { return {total_col, total_row, rounds}; }
  friend bool operator==(const MatchOutcome&, const MatchOutcome&) = default;
};

// Number of rounds ending in each joint outcome, from the first strategy's side.
struct OutcomeCounts {
  int64_t cc = 0, cd = 0, dc = 0, dd = 0;

  MatchOutcome Score(const PayoffMatrix& m, int rounds) const;
  friend bool operator==(const OutcomeCounts&, const OutcomeCounts&) = default;
};

// Result of the cycle-accelerated evaluator. `pre_period` is the index of the
// first round whose joint window state recurs; `cycle_length` is 0 when the
// match ended before any state repeated.
struct MatchTrace {
  OutcomeCounts counts;
  int pre_period = 0;
  int cycle_length = 0;
};

// Literal round-by-round simulation. Both players move simultaneously from their
// current windows, then each window takes in the opponent's action.
MatchOutcome PlayMatchNaive(const Strategy& a, const Strategy& b, const PayoffMatrix& m, int rounds);

// The joint actions of every round, as (first, second) pairs.
std::vector<std::pair<Action, Action>> PlayRounds(const Strategy& a, const Strategy& b, int rounds);

// Exact evaluator: finds the cycle in the joint (windowA, windowB) state and
// extrapolates, so cost is bounded by 4^k steps regardless of `rounds`.
MatchTrace TraceMatch(const Strategy& a, const Strategy& b, int rounds);
MatchOutcome PlayMatchFast(const Strategy& a, const Strategy& b, const PayoffMatrix& m, int rounds);

// Memoizes PlayMatchFast for one (matrix, rounds) pair. Stores one canonical
// orientation per unordered strategy pair. Not thread-safe; use one per worker.
class MatchPayoffCache {
 public:
  MatchPayoffCache(const PayoffMatrix& m, int rounds);

  const PayoffMatrix& Matrix() const { return matrix_; }
  int Rounds() const { return rounds_; }

  MatchOutcome Match(const Strategy& a, const Strategy& b);

  size_t Size() const { return table_.size(); }
  uint64_t Hits() const { return hits_; }
  uint64_t Misses() const { return misses_; }

 private:
  struct Key {
    uint64_t lo, hi;
    int k;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& key) const noexcept;
  };

  PayoffMatrix matrix_;
  int rounds_;
  std::unordered_map<Key, MatchOutcome, KeyHash> table_;
  uint64_t hits_ = 0, misses_ = 0;
};

// Throws InvalidInput if (m, rounds) differ from what the cache was built for.
MatchOutcome CachedMatch(MatchPayoffCache& cache, const Strategy& a, const Strategy& b,
                         const PayoffMatrix& m, int rounds);

}  // namespace gsel

#endif  // GSEL_MATCH_HPP
