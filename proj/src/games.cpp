#include "gsel/games.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gsel {

double PayoffMatrix::Min() const { return std::min({a, b, c, d}); }
double PayoffMatrix::Max() const { return std::max({a, b, c, d}); }

std::string PayoffMatrix::Inspect() const {
  std::ostringstream ss;
  ss << "(a=" << a << ", b=" << b << ", c=" << c << ", d=" << d << ")";
  return ss.str();
}

PayoffMatrix MakeStandardGame(StandardGame g) {
  switch (g) {
    case StandardGame::PrisonersDilemma: return {4, 5, 1, 2};
    case StandardGame::WeakChicken:      return {4, 7, 1, 0};
    case StandardGame::StrongChicken:    return {4, 10, 1, 0};
  }
  throw InvalidInput("unknown standard game");
}

StandardGame ParseStandardGame(std::string_view name) {
  std::string key;
  for (char ch : name) {
    if (ch == '_' || ch == ' ') ch = '-';
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (key == "pd" || key == "prisoners-dilemma" || key == "ipd") return StandardGame::PrisonersDilemma;
  if (key == "weak-chicken" || key == "weakchicken") return StandardGame::WeakChicken;
  if (key == "strong-chicken" || key == "strongchicken") return StandardGame::StrongChicken;
  throw InvalidInput("unknown game '" + std::string(name) +
                     "' (expected pd, weak-chicken or strong-chicken)");
}

std::string_view Name(StandardGame g) {
  switch (g) {
    case StandardGame::PrisonersDilemma: return "pd";
    case StandardGame::WeakChicken:      return "weak-chicken";
    case StandardGame::StrongChicken:    return "strong-chicken";
  }
  return "?";
}

Tenths Tenths::Parse(double x) {
  const double scaled = x * 10.0;
  const double rounded = std::round(scaled);
  if (!std::isfinite(x) || std::abs(scaled - rounded) > 1e-6 || std::abs(rounded) > 1e8) {
    std::ostringstream ss;
    ss << "value " << x << " is not an integer multiple of 0.1";
    throw InvalidInput(ss.str());
  }
  return Tenths{static_cast<int>(rounded)};
}

std::string Tenths::ToString() const {
  const int mag = std::abs(value);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%d.%d", value < 0 ? "-" : "", mag / 10, mag % 10);
  return buf;
}

GridSpec GridSpec::From(double step, double lo, double hi) {
  if (!(step > 0.0)) throw InvalidInput("grid step must be positive");
  GridSpec g{Tenths::Parse(step), Tenths::Parse(lo), Tenths::Parse(hi)};
  if (g.lo > g.hi) throw InvalidInput("grid bounds must satisfy lo <= hi");
  return g;
}

std::vector<Tenths> GridSpec::Axis() const {
  if (step.value <= 0) throw InvalidInput("grid step must be positive");
  if (lo > hi) throw InvalidInput("grid bounds must satisfy lo <= hi");
  std::vector<Tenths> axis;
  for (int v = lo.value; v <= hi.value; v += step.value) axis.push_back(Tenths{v});
  return axis;
}

std::vector<GridGame> EnumerateGameSpace(Tenths a_fixed, const GridSpec& grid) {
  if (a_fixed < grid.lo || a_fixed > grid.hi) throw InvalidInput("a_fixed must lie within [lo, hi]");
  const auto axis = grid.Axis();
  std::vector<GridGame> out;
  out.reserve(axis.size() * axis.size() * axis.size());
  for (Tenths d : axis)
    for (Tenths c : axis)
      for (Tenths b : axis) out.push_back({a_fixed, b, c, d});
  return out;
}

std::vector<GridGame> EnumerateGameSpace(double a_fixed, double step, double lo, double hi) {
  return EnumerateGameSpace(Tenths::Parse(a_fixed), GridSpec::From(step, lo, hi));
}

std::vector<GridGame> EnumerateFullGameSpace(const GridSpec& grid) {
  std::vector<GridGame> out;
  for (Tenths a : grid.Axis()) {
    auto slice = EnumerateGameSpace(a, grid);
    out.insert(out.end(), slice.begin(), slice.end());
  }
  return out;
}

std::string_view Name(Region r) {
  switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::R3: return "R3";
    case Region::R4: return "R4";
    case Region::Unclassified: return "Unclassified";
  }
  return "?";
}

namespace {

constexpr double kEps = 1e-9;
// Half a 0.1 grid step: a cell belongs to a slice when its (b,c) point lies this close
// to the slice's cross-section segment at that d.
constexpr double kSliceHalfWidth = 0.05;

struct Point {
  double b, c;
};

double DistanceToSegment(Point p, Point s0, Point s1) {
  const double vb = s1.b - s0.b, vc = s1.c - s0.c;
  const double len2 = vb * vb + vc * vc;
  double t = len2 > 0.0 ? ((p.b - s0.b) * vb + (p.c - s0.c) * vc) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double db = p.b - (s0.b + t * vb), dc = p.c - (s0.c + t * vc);
  return std::sqrt(db * db + dc * dc);
}

// Triangle with its base segment [base0, base1] at d=0 and its apex at depth apex_d.
bool InSlice(const PayoffMatrix& m, Point base0, Point base1, Point apex, double apex_d) {
  if (m.d < -kEps || m.d > apex_d + kEps) return false;
  const double t = std::clamp(m.d / apex_d, 0.0, 1.0);
  const Point s0{base0.b + t * (apex.b - base0.b), base0.c + t * (apex.c - base0.c)};
  const Point s1{base1.b + t * (apex.b - base1.b), base1.c + t * (apex.c - base1.c)};
  return DistanceToSegment({m.b, m.c}, s0, s1) <= kSliceHalfWidth + kEps;
}

}  // namespace

Region RegionOf(const PayoffMatrix& m) {
  if (m.d <= 0.5 + kEps && m.b >= 0.4 - kEps && m.c <= 0.4 + kEps) return Region::R1;
  if (m.d >= 0.5 - kEps && m.b <= 0.5 + kEps && m.c >= 0.5 - kEps) return Region::R2;
  if (InSlice(m, {0.5, 0.4}, {1.0, 0.6}, {0.9, 0.7}, 0.4)) return Region::R3;
  if (InSlice(m, {0.5, 0.5}, {1.0, 1.0}, {1.0, 1.0}, 0.9)) return Region::R4;
  return Region::Unclassified;
}

}  // namespace gsel
