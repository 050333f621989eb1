#ifndef GSEL_GAMES_HPP
#define GSEL_GAMES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gsel {

// Thrown for any rejected input: bad strategy text, invalid parameters,
// malformed configuration values.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bit 1 = Cooperate, 0 = Defect, everywhere (strategy strings, windows, tables).
enum class Action : uint8_t { Defect = 0, Cooperate = 1 };

constexpr Action Flip(Action x) {
  return x == Action::Cooperate ? Action::Defect : Action::Cooperate;
}
constexpr char ToChar(Action x) { return x == Action::Cooperate ? 'C' : 'D'; }

// Row-player payoffs of a symmetric 2x2 game.
//   a: CC, b: DC (row defects, column cooperates), c: CD, d: DD.
struct PayoffMatrix {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double Min() const;
  double Max() const;
  std::string Inspect() const;
  friend bool operator==(const PayoffMatrix&, const PayoffMatrix&) = default;
};

constexpr double Payoff(const PayoffMatrix& m, Action mine, Action theirs) {
  if (mine == Action::Cooperate) return theirs == Action::Cooperate ? m.a : m.c;
  return theirs == Action::Cooperate ? m.b : m.d;
}

enum class StandardGame { PrisonersDilemma, WeakChicken, StrongChicken };

PayoffMatrix MakeStandardGame(StandardGame g);
// Accepts "pd", "prisoners-dilemma", "weak-chicken", "strong-chicken" (case-insensitive,
// '_' and '-' interchangeable). Unknown names throw InvalidInput.
StandardGame ParseStandardGame(std::string_view name);
std::string_view Name(StandardGame g);

// Swaps the roles of C and D: (a,b,c,d) -> (d,c,b,a). An involution.
constexpr PayoffMatrix MirrorGame(const PayoffMatrix& m) { return {m.d, m.c, m.b, m.a}; }

// A grid payoff held as an integer count of tenths, so enumeration and
// file output never drift.
struct Tenths {
  int value = 0;

  static Tenths Parse(double x);  // throws InvalidInput unless x is a multiple of 0.1
  double ToDouble() const { return value / 10.0; }
  std::string ToString() const;  // "0.3", "1.0", "-0.2"
  auto operator<=>(const Tenths&) const = default;
};

struct GridGame {
  Tenths a, b, c, d;

  PayoffMatrix ToMatrix() const {
    return {a.ToDouble(), b.ToDouble(), c.ToDouble(), d.ToDouble()};
  }
  auto operator<=>(const GridGame&) const = default;
};

struct GridSpec {
  Tenths step{1};
  Tenths lo{0};
  Tenths hi{10};

  static GridSpec From(double step, double lo, double hi);  // validates
  std::vector<Tenths> Axis() const;
};

// All (b,c,d) on the grid with a fixed, d outermost then c then b.
std::vector<GridGame> EnumerateGameSpace(Tenths a_fixed, const GridSpec& grid);
std::vector<GridGame> EnumerateGameSpace(double a_fixed, double step, double lo, double hi);
// a enumerated as well (outermost).
std::vector<GridGame> EnumerateFullGameSpace(const GridSpec& grid);

// Approximate Figure-2 regions of the a=0.5 slice; advisory only.
enum class Region { R1, R2, R3, R4, Unclassified };
std::string_view Name(Region r);
Region RegionOf(const PayoffMatrix& m);

}  // namespace gsel

#endif  // GSEL_GAMES_HPP
