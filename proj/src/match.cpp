#include "gsel/match.hpp"

#include <algorithm>
#include <string>

namespace gsel {

namespace {

void CheckPair(const Strategy& a, const Strategy& b, int rounds) {
  if (a.Memory() != b.Memory())
    throw InvalidInput("strategies have different memory lengths (" + std::to_string(a.Memory()) +
                       " vs " + std::to_string(b.Memory()) + ")");
  if (rounds < 1) throw InvalidInput("rounds must be at least 1");
}

constexpr int kMaxStates = 1 << (2 * kMaxMemory);

}  // namespace

MatchOutcome OutcomeCounts::Score(const PayoffMatrix& m, int rounds) const {
  const double ncc = static_cast<double>(cc), ncd = static_cast<double>(cd);
  const double ndc = static_cast<double>(dc), ndd = static_cast<double>(dd);
  // Same summation order for both sides so that swapping the players swaps the
  // totals bit-for-bit.
  const double mutual = ncc * m.a + ndd * m.d;
  return {mutual + (ncd * m.c + ndc * m.b), mutual + (ndc * m.c + ncd * m.b), rounds};
}

MatchOutcome PlayMatchNaive(const Strategy& a, const Strategy& b, const PayoffMatrix& m, int rounds) {
  CheckPair(a, b, rounds);
  HistoryWindow wa(a), wb(b);
  MatchOutcome out{0.0, 0.0, rounds};
  for (int t = 0; t < rounds; ++t) {
    const Action xa = Decide(a, wa), xb = Decide(b, wb);
    out.total_row += Payoff(m, xa, xb);
    out.total_col += Payoff(m, xb, xa);
    wa.Push(xb);
    wb.Push(xa);
  }
  return out;
}

std::vector<std::pair<Action, Action>> PlayRounds(const Strategy& a, const Strategy& b, int rounds) {
  CheckPair(a, b, rounds);
  HistoryWindow wa(a), wb(b);
  std::vector<std::pair<Action, Action>> seq;
  seq.reserve(static_cast<size_t>(rounds));
  for (int t = 0; t < rounds; ++t) {
    const Action xa = Decide(a, wa), xb = Decide(b, wb);
    seq.emplace_back(xa, xb);
    wa.Push(xb);
    wb.Push(xa);
  }
  return seq;
}

MatchTrace TraceMatch(const Strategy& a, const Strategy& b, int rounds) {
  CheckPair(a, b, rounds);
  const int k = a.Memory();
  const uint32_t mask = (1u << k) - 1u;
  const int states = 1 << (2 * k);

  std::array<int16_t, kMaxStates> seen;
  std::fill_n(seen.begin(), states, int16_t{-1});
  // cum[t][o]: rounds before t ending in outcome o, o = (actionA << 1) | actionB.
  std::array<std::array<int32_t, 4>, kMaxStates + 1> cum;
  cum[0] = {0, 0, 0, 0};

  uint32_t wa = a.InitialWindow(), wb = b.InitialWindow();
  MatchTrace trace;
  for (int t = 0; t < rounds; ++t) {
    const uint32_t state = (wa << k) | wb;
    if (seen[state] >= 0) {
      const int start = seen[state];
      const int len = t - start;
      const int64_t remaining = rounds - t;
      const int64_t whole = remaining / len;
      const int rest = static_cast<int>(remaining % len);
      int64_t total[4];
      for (int o = 0; o < 4; ++o)
        total[o] = cum[t][o] + whole * (cum[t][o] - cum[start][o]) + (cum[start + rest][o] - cum[start][o]);
      trace.counts = {total[3], total[2], total[1], total[0]};
      trace.pre_period = start;
      trace.cycle_length = len;
      return trace;
    }
    seen[state] = static_cast<int16_t>(t);
    const uint32_t xa = static_cast<uint32_t>(a.Respond(wa));
    const uint32_t xb = static_cast<uint32_t>(b.Respond(wb));
    cum[t + 1] = cum[t];
    ++cum[t + 1][(xa << 1) | xb];
    wa = ((wa << 1) | xb) & mask;
    wb = ((wb << 1) | xa) & mask;
  }
  // Only reachable when rounds <= number of distinct states visited.
  const auto& last = cum[rounds];
  trace.counts = {last[3], last[2], last[1], last[0]};
  trace.pre_period = rounds;
  trace.cycle_length = 0;
  return trace;
}

MatchOutcome PlayMatchFast(const Strategy& a, const Strategy& b, const PayoffMatrix& m, int rounds) {
  return TraceMatch(a, b, rounds).counts.Score(m, rounds);
}

size_t MatchPayoffCache::KeyHash::operator()(const Key& key) const noexcept {
  uint64_t h = key.lo * 0x9E3779B97F4A7C15ull;
  h ^= key.hi + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
  h ^= static_cast<uint64_t>(key.k) << 58;
  return static_cast<size_t>(h ^ (h >> 31));
}

MatchPayoffCache::MatchPayoffCache(const PayoffMatrix& m, int rounds) : matrix_(m), rounds_(rounds) {
  if (rounds < 1) throw InvalidInput("rounds must be at least 1");
}

MatchOutcome MatchPayoffCache::Match(const Strategy& a, const Strategy& b) {
  const bool swapped = a.Bits() > b.Bits();
  const Strategy& lo = swapped ? b : a;
  const Strategy& hi = swapped ? a : b;
  const Key key{lo.Bits(), hi.Bits(), a.Memory()};
  auto it = table_.find(key);
  if (it == table_.end()) {
    ++misses_;
    it = table_.emplace(key, PlayMatchFast(lo, hi, matrix_, rounds_)).first;
  } else {
    ++hits_;
  }
  return swapped ? it->second.Swapped() : it->second;
}

MatchOutcome CachedMatch(MatchPayoffCache& cache, const Strategy& a, const Strategy& b,
                         const PayoffMatrix& m, int rounds) {
  if (!(m == cache.Matrix()) || rounds != cache.Rounds())
    throw InvalidInput("match cache was built for a different matrix or round count");
  return cache.Match(a, b);
}

}  // namespace gsel
