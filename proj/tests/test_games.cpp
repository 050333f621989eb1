#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "gsel/games.hpp"

using namespace gsel;

TEST_CASE("standard games match the published matrices") {
  CHECK(MakeStandardGame(StandardGame::PrisonersDilemma) == PayoffMatrix{4, 5, 1, 2});
  CHECK(MakeStandardGame(StandardGame::WeakChicken) == PayoffMatrix{4, 7, 1, 0});
  CHECK(MakeStandardGame(StandardGame::StrongChicken) == PayoffMatrix{4, 10, 1, 0});
  CHECK(ParseStandardGame("PD") == StandardGame::PrisonersDilemma);
  CHECK(ParseStandardGame("strong_chicken") == StandardGame::StrongChicken);
  CHECK_THROWS_AS(ParseStandardGame("stag-hunt"), InvalidInput);
}

TEST_CASE("payoff lookup") {
  const auto pd = MakeStandardGame(StandardGame::PrisonersDilemma);
  CHECK(Payoff(pd, Action::Defect, Action::Cooperate) == 5);
  CHECK(Payoff(MakeStandardGame(StandardGame::StrongChicken), Action::Cooperate, Action::Defect) == 1);

  const PayoffMatrix m{0.1, 0.2, 0.3, 0.4};
  std::set<double> seen;
  for (Action x : {Action::Cooperate, Action::Defect})
    for (Action y : {Action::Cooperate, Action::Defect}) seen.insert(Payoff(m, x, y));
  CHECK(seen == std::set<double>{0.1, 0.2, 0.3, 0.4});
  CHECK(Payoff(m, Action::Cooperate, Action::Cooperate) == m.a);
  CHECK(Payoff(m, Action::Defect, Action::Defect) == m.d);
}

TEST_CASE("game space enumeration") {
  const auto space = EnumerateGameSpace(0.5, 0.1, 0.0, 1.0);
  CHECK(space.size() == 1331);
  CHECK(std::set<GridGame>(space.begin(), space.end()).size() == space.size());
  for (const auto& g : space) {
    CHECK(g.a.value == 5);
    CHECK(g.b.value >= 0);
    CHECK(g.d.value <= 10);
  }
  // d outermost, then c, then b
  CHECK(space[0] == GridGame{{5}, {0}, {0}, {0}});
  CHECK(space[1] == GridGame{{5}, {1}, {0}, {0}});
  CHECK(space[11] == GridGame{{5}, {0}, {1}, {0}});
  CHECK(space[121] == GridGame{{5}, {0}, {0}, {1}});
  CHECK(std::is_sorted(space.begin(), space.end(), [](const GridGame& x, const GridGame& y) {
    return std::tie(x.d, x.c, x.b) < std::tie(y.d, y.c, y.b);
  }));

  CHECK(EnumerateGameSpace(0.5, 1.0, 0.0, 1.0).size() == 8);
  CHECK(EnumerateGameSpace(0.4, 0.2, 0.0, 1.0).size() == 216);

  const auto full = EnumerateFullGameSpace(GridSpec::From(0.1, 0.0, 1.0));
  CHECK(full.size() == 14641);
  CHECK(std::set<GridGame>(full.begin(), full.end()).size() == 14641);

  CHECK_THROWS_AS(EnumerateGameSpace(0.5, 0.0, 0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(EnumerateGameSpace(0.5, -0.1, 0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(EnumerateGameSpace(0.5, 0.1, 1.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(EnumerateGameSpace(1.5, 0.1, 0.0, 1.0), InvalidInput);
  CHECK_THROWS_AS(EnumerateGameSpace(0.5, 0.15, 0.0, 1.0), InvalidInput);
}

TEST_CASE("grid values are exact tenths") {
  CHECK(Tenths::Parse(0.3).value == 3);
  CHECK(Tenths::Parse(0.1 + 0.2).value == 3);
  CHECK(Tenths{3}.ToString() == "0.3");
  CHECK(Tenths{10}.ToString() == "1.0");
  CHECK(Tenths{-2}.ToString() == "-0.2");
  CHECK(Tenths{0}.ToString() == "0.0");
  CHECK_THROWS_AS(Tenths::Parse(0.25), InvalidInput);
}

TEST_CASE("mirror game") {
  CHECK(MirrorGame({0.5, 0.8, 0.1, 0.3}) == PayoffMatrix{0.3, 0.1, 0.8, 0.5});
  CHECK(MirrorGame(MakeStandardGame(StandardGame::PrisonersDilemma)) == PayoffMatrix{2, 1, 5, 4});
  for (const auto& g : EnumerateFullGameSpace(GridSpec::From(0.5, 0.0, 1.0))) {
    const auto m = g.ToMatrix();
    CHECK(MirrorGame(MirrorGame(m)) == m);
  }
}

TEST_CASE("region labels") {
  CHECK(RegionOf({0.5, 0.8, 0.1, 0.3}) == Region::R1);
  CHECK(RegionOf({0.5, 0.9, 0.1, 0.0}) == Region::R1);
  CHECK(RegionOf({0.5, 0.9, 0.9, 0.0}) == Region::R4);
  CHECK(RegionOf({0.5, 0.3, 0.7, 0.8}) == Region::R2);
  // closed bounds
  CHECK(RegionOf({0.5, 0.4, 0.4, 0.5}) == Region::R1);
  CHECK(RegionOf({0.5, 0.5, 0.5, 0.5}) == Region::R2);
  // R3 base endpoints and apex
  CHECK(RegionOf({0.5, 0.5, 0.4, 0.0}) == Region::R1);  // R1 takes precedence
  CHECK(RegionOf({0.5, 1.0, 0.6, 0.0}) == Region::R3);
  CHECK(RegionOf({0.5, 0.9, 0.7, 0.4}) == Region::R3);
  CHECK(RegionOf({0.5, 0.8, 0.5, 0.0}) == Region::R3);
  // R4 apex and cut-off past it
  CHECK(RegionOf({0.5, 1.0, 1.0, 0.9}) == Region::R4);
  CHECK(RegionOf({0.5, 1.0, 1.0, 1.0}) == Region::Unclassified);
  CHECK(RegionOf({0.5, 0.6, 0.9, 0.2}) == Region::Unclassified);
  CHECK(RegionOf({0.5, 0.2, 0.9, 0.2}) == Region::Unclassified);
}
