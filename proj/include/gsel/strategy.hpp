#ifndef GSEL_STRATEGY_HPP
#define GSEL_STRATEGY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "gsel/games.hpp"

namespace gsel {

constexpr int kMaxMemory = 5;  // k + 2^k must fit in 64 bits

// A memory-k deterministic strategy: k fictitious-history bits (most distant
// first) followed by a 2^k-entry response table. String position i is stored
// in bit i of `bits`.
class Strategy {
 public:
  Strategy() = default;
  Strategy(int k, uint64_t bits);

  static Strategy Parse(std::string_view text, int k);
  static Strategy AllCooperate(int k);
  static Strategy AllDefect(int k);
  static size_t LengthFor(int k) { return static_cast<size_t>(k) + (size_t{1} << k); }

  int Memory() const { return k_; }
  size_t Length() const { return LengthFor(k_); }
  uint64_t Bits() const { return bits_; }

  Action At(size_t pos) const { return static_cast<Action>((bits_ >> pos) & 1u); }
  Strategy WithFlipped(size_t pos) const { return Strategy(k_, bits_ ^ (uint64_t{1} << pos)); }

  // Opponent-history window built from the fictitious history.
  uint32_t InitialWindow() const;
  // Response to a history state; the most distant action is the most significant bit.
  Action Respond(uint32_t window) const { return At(static_cast<size_t>(k_) + window); }

  // Every bit flipped, with the response table re-indexed under complemented
  // histories, so that the complement plays the mirror image of this strategy.
  Strategy Complement() const;

  std::string ToString() const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  int k_ = 1;
  uint64_t bits_ = 0;
};

// Sliding window of the opponent's last k actions, most distant first.
class HistoryWindow {
 public:
  explicit HistoryWindow(const Strategy& owner)
      : k_(owner.Memory()), state_(owner.InitialWindow()) {}
  HistoryWindow(int k, uint32_t state) : k_(k), state_(state) {}

  int Memory() const { return k_; }
  uint32_t State() const { return state_; }
  Action At(int i) const { return static_cast<Action>((state_ >> (k_ - 1 - i)) & 1u); }

  void Push(Action opponent) {
    state_ = ((state_ << 1) | static_cast<uint32_t>(opponent)) & ((1u << k_) - 1u);
  }
  std::string ToString() const;

 private:
  int k_;
  uint32_t state_;
};

// Throws InvalidInput when the window length differs from the strategy's memory.
Action Decide(const Strategy& s, const HistoryWindow& w);

}  // namespace gsel

template <>
struct std::hash<gsel::Strategy> {
  size_t operator()(const gsel::Strategy& s) const noexcept {
    return std::hash<uint64_t>{}(s.Bits() * 0x9E3779B97F4A7C15ull + static_cast<uint64_t>(s.Memory()));
  }
};

#endif  // GSEL_STRATEGY_HPP
