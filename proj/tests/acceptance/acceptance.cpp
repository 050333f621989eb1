// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//
//   acceptance            run every criterion
//   acceptance 3 7        run only criteria 3 and 7
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gsel/config.hpp"
#include "gsel/evolution.hpp"
#include "gsel/experiments.hpp"
#include "gsel/games.hpp"
#include "gsel/match.hpp"
#include "gsel/report.hpp"
#include "gsel/stats.hpp"

using namespace gsel;
namespace fs = std::filesystem;

namespace {

constexpr uint64_t kMasterSeed = 20100;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

RunOptions Options(bool keep_populations = false) {
  RunOptions o;
  o.workers = 0;
  o.keep_populations = keep_populations;
  return o;
}

struct GamePair {
  StandardGame game;
  ReplicationBatch group, indiv;
};

// Criteria 1-3 share the same runs: paper defaults, 100 replications per mechanism.
const std::vector<GamePair>& StandardGameRuns() {
  static const std::vector<GamePair> runs = [] {
    std::vector<GamePair> out;
    const EvolutionParams params;
    for (StandardGame g : {StandardGame::PrisonersDilemma, StandardGame::WeakChicken, StandardGame::StrongChicken}) {
      const auto m = MakeStandardGame(g);
      out.push_back({g, RunReplications(m, params, Mechanism::Group, 100, kMasterSeed, Options()),
                     RunReplications(m, params, Mechanism::Individual, 100, kMasterSeed, Options())});
    }
    return out;
  }();
  return runs;
}

// Group sample greater than individual sample, one-sided Welch.
Verdict GroupGreater(const std::string& label, const std::vector<double>& group, const std::vector<double>& indiv,
                     double p_threshold) {
  const auto test = WelchTTest(group, indiv);
  const double p = OneSidedGreaterP(test);
  const bool ok = Mean(group) > Mean(indiv) && p < p_threshold;
  return {ok, label + " group=" + Fmt("%.4f", Mean(group)) + " indiv=" + Fmt("%.4f", Mean(indiv)) +
                  " p=" + Fmt("%.3g", p) + (ok ? "" : " <-- fails")};
}

Verdict AllGames(const std::function<Verdict(const GamePair&)>& check) {
  Verdict v{true, ""};
  for (const auto& run : StandardGameRuns()) {
    const auto one = check(run);
    v.pass = v.pass && one.pass;
    v.detail += (v.detail.empty() ? "" : "; ") + std::string(Name(run.game)) + ": " + one.detail;
  }
  return v;
}

Verdict Criterion1() {
  return AllGames([](const GamePair& r) {
    return GroupGreater("mean", r.group.MeanPayoffs(), r.indiv.MeanPayoffs(), 0.01);
  });
}

Verdict Criterion2() {
  return AllGames([](const GamePair& r) {
    return GroupGreater("best", r.group.BestPayoffs(), r.indiv.BestPayoffs(), 0.05);
  });
}

Verdict Criterion3() {
  const auto& sc = StandardGameRuns()[2];
  return GroupGreater("strong-chicken best-worst", sc.group.Spreads(), sc.indiv.Spreads(), 0.05);
}

Verdict Criterion4() {
  const EvolutionParams params;
  const auto pd = MakeStandardGame(StandardGame::PrisonersDilemma);
  const auto group = RunReplications(pd, params, Mechanism::Group, 100, kMasterSeed, Options(true));
  const auto indiv = RunReplications(pd, params, Mechanism::Individual, 100, kMasterSeed, Options(true));
  const auto labels = FrequencyColumnLabels(3);

  auto per_rep = [](const ReplicationBatch& b, size_t pos) {
    std::vector<double> out;
    for (const auto& pop : b.final_populations) out.push_back(StrategyFrequencies({pop}, 3).cooperate[pos]);
    return out;
  };
  const auto g_all = StrategyFrequencies(group.final_populations, 3);
  const auto i_all = StrategyFrequencies(indiv.final_populations, 3);

  Verdict v{true, ""};
  const size_t ccc = 3 + 7, ddd = 3 + 0, dcc = 3 + 3;
  const bool ccc_high = g_all.cooperate[ccc] > 0.85;
  v.pass = ccc_high;
  v.detail = "group CCC=" + Fmt("%.3f", g_all.cooperate[ccc]) + (ccc_high ? " > 0.85" : " <= 0.85 <-- fails");
  for (size_t pos : {ccc, ddd, dcc}) {
    const auto one = GroupGreater(labels[pos], per_rep(group, pos), per_rep(indiv, pos), 0.05);
    v.pass = v.pass && one.pass;
    v.detail += "; " + one.detail;
  }
  std::ostringstream table;
  for (size_t pos = 0; pos < labels.size(); ++pos)
    table << ' ' << labels[pos] << '=' << Fmt("%.3f", g_all.cooperate[pos]) << '/'
          << Fmt("%.3f", i_all.cooperate[pos]);
  v.detail += "; group/indiv:" + table.str();
  return v;
}

Verdict Criterion5() {
  const EvolutionParams params;
  struct Spot {
    PayoffMatrix m;
    Classification expected;
  };
  const std::vector<Spot> spots = {{{0.5, 0.8, 0.1, 0.3}, Classification::GroupBetter},
                                   {{0.5, 0.9, 0.1, 0.0}, Classification::GroupBetter},
                                   {{0.5, 0.9, 0.9, 0.0}, Classification::IndividualBetter}};
  Verdict v{true, ""};
  for (const auto& s : spots) {
    const auto cell = ClassifyCell(s.m, params, 100, 0.01, Metric::MeanPayoff, kMasterSeed, Options());
    const bool ok = cell.classification == s.expected;
    v.pass = v.pass && ok;
    v.detail += (v.detail.empty() ? "" : "; ") + s.m.Inspect() + " -> " + std::string(Name(cell.classification)) +
                " (group=" + Fmt("%.4f", cell.mean_group) + " indiv=" + Fmt("%.4f", cell.mean_indiv) +
                " p=" + Fmt("%.3g", cell.test.p) + ")" + (ok ? "" : " <-- expected " + std::string(Name(s.expected)));
  }
  return v;
}

Verdict Criterion6() {
  const EvolutionParams params;
  const auto space = EnumerateGameSpace(0.5, 0.2, 0.0, 1.0);
  const auto sweep = RunSweep(space, params, 50, 0.01, kMasterSeed, Options());
  const auto regions = SummarizeRegions(sweep.mean);

  int cells = 0, matched = 0;
  std::string detail;
  for (const auto& r : regions) {
    detail += std::string(Name(r.region)) + " " + std::to_string(r.matched) + "/" + std::to_string(r.cells) + "; ";
    if (r.region == Region::R3) continue;
    cells += r.cells;
    matched += r.matched;
  }
  const double fraction = cells == 0 ? 0.0 : static_cast<double>(matched) / cells;
  const auto& r3 = regions[static_cast<size_t>(Region::R3)];
  const bool pooled_ok = cells > 0 && fraction >= 0.75;
  const bool r3_ok = r3.cells > 0 && 2 * r3.matched > r3.cells;
  detail += "R1+R2+R4 " + Fmt("%.3f", fraction) + (pooled_ok ? " >= 0.75" : " < 0.75 <-- fails") +
            "; R3 majority group: " + (r3_ok ? "yes" : "no <-- fails");
  return {pooled_ok && r3_ok, std::to_string(space.size()) + " cells; " + detail};
}

Verdict Criterion7() {
  std::mt19937_64 rng(kMasterSeed);
  std::uniform_int_distribution<uint64_t> bits3(0, (1u << 11) - 1);
  std::uniform_int_distribution<int> tenth(0, 10);
  auto matrix = [&] { return PayoffMatrix{tenth(rng) / 10.0, tenth(rng) / 10.0, tenth(rng) / 10.0, tenth(rng) / 10.0}; };
  auto close = [](const MatchOutcome& x, const MatchOutcome& y) {
    return std::abs(x.total_row - y.total_row) <= 1e-9 && std::abs(x.total_col - y.total_col) <= 1e-9;
  };
  std::vector<PayoffMatrix> matrices;
  for (int i = 0; i < 20; ++i) matrices.push_back(matrix());

  long checked = 0, failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const Strategy a(3, bits3(rng)), b(3, bits3(rng));
    for (const auto& m : matrices) {
      failures += !close(PlayMatchFast(a, b, m, 200), PlayMatchNaive(a, b, m, 200));
      ++checked;
    }
  }
  for (uint64_t x = 0; x < 8; ++x)
    for (uint64_t y = 0; y < 8; ++y)
      for (const auto& m : matrices) {
        failures += !close(PlayMatchFast(Strategy(1, x), Strategy(1, y), m, 200),
                           PlayMatchNaive(Strategy(1, x), Strategy(1, y), m, 200));
        ++checked;
      }
  return {failures == 0, std::to_string(checked) + " matches compared, " + std::to_string(failures) + " mismatches"};
}

Verdict Criterion8() {
  std::mt19937_64 rng(kMasterSeed + 8);
  std::uniform_int_distribution<uint64_t> bits3(0, (1u << 11) - 1);
  std::uniform_int_distribution<int> tenth(0, 10);
  long rounds = 0, mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const Strategy a(3, bits3(rng)), b(3, bits3(rng));
    const PayoffMatrix m{tenth(rng) / 10.0, tenth(rng) / 10.0, tenth(rng) / 10.0, tenth(rng) / 10.0};
    const auto mm = MirrorGame(m);
    const auto orig = PlayRounds(a, b, 200);
    const auto mirr = PlayRounds(a.Complement(), b.Complement(), 200);
    for (size_t t = 0; t < orig.size(); ++t, ++rounds) {
      mismatches += Payoff(m, orig[t].first, orig[t].second) != Payoff(mm, mirr[t].first, mirr[t].second);
      mismatches += Payoff(m, orig[t].second, orig[t].first) != Payoff(mm, mirr[t].second, mirr[t].first);
    }
  }
  return {mismatches == 0, std::to_string(rounds) + " rounds compared, " + std::to_string(mismatches) + " mismatches"};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict Criterion9() {
  const fs::path root = fs::temp_directory_path() / "gsel_acceptance_determinism";
  fs::remove_all(root);
  std::vector<fs::path> dirs;
  std::ostringstream log;
  for (const char* workers : {"1", "1", "4"}) {
    const fs::path dir = root / ("run" + std::to_string(dirs.size()));
    const auto cfg = BuildConfig(Command::Simulate, {{{"game", "pd"},
                                                      {"seed", std::to_string(kMasterSeed)},
                                                      {"workers", workers},
                                                      {"output_dir", dir.string()}}});
    CmdSimulate(cfg, log);
    dirs.push_back(dir);
  }
  size_t files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(dirs[0])) {
    const std::string ref = Slurp(entry.path());
    ++files;
    for (size_t i = 1; i < dirs.size(); ++i) {
      const fs::path other = dirs[i] / entry.path().filename();
      differing += !fs::exists(other) || Slurp(other) != ref;
    }
  }
  for (size_t i = 1; i < dirs.size(); ++i)
    differing += static_cast<size_t>(std::distance(fs::directory_iterator(dirs[i]), fs::directory_iterator{})) != files;
  fs::remove_all(root);
  return {files == 202 && differing == 0,
          std::to_string(files) + " files per run (workers 1, 1, 4), " + std::to_string(differing) + " differences"};
}

Verdict Criterion10() {
  struct Ref {
    std::vector<double> xs, ys;
    double t, p;
  };
  // scipy.stats.ttest_ind(xs, ys, equal_var=False)
  const std::vector<Ref> refs = {
      {{1, 2, 3}, {2, 3, 4}, -1.224744871391589, 0.2878641347266908},
      {{1.5, 2.5, 9.0, 4.0}, {3.0, 3.2, 3.1}, 0.6904489377617676, 0.5394254578608897},
      {{0.1, 0.4, 0.35, 0.8, 0.9, 0.2}, {0.55, 0.6, 0.52, 0.58}, -0.7827650156732672, 0.4680567934982378},
      {{10, 12, 9, 11, 14, 13, 10, 12}, {7, 8, 9, 6, 7, 8}, 5.281801663107463, 0.00020990981436863504},
  };
  double worst = 0.0;
  for (const auto& r : refs) {
    const auto w = WelchTTest(r.xs, r.ys);
    worst = std::max({worst, std::abs(w.t - r.t), std::abs(w.p - r.p)});
  }
  return {worst <= 1e-6, "max |error| on t and p = " + Fmt("%.3g", worst)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"1  mean payoff: group > individual (p<0.01)", Criterion1},
      {"2  best individual: group > individual (p<0.05)", Criterion2},
      {"3  strong chicken best-worst spread: group > individual (p<0.05)", Criterion3},
      {"4  strategy frequencies CCC/DDD/DCC direction (p<0.05)", Criterion4},
      {"5  payoff-space spot cells", Criterion5},
      {"6  payoff-space region structure (step 0.2, 50 reps)", Criterion6},
      {"7  fast evaluator equals naive simulation", Criterion7},
      {"8  mirror symmetry of complemented strategies", Criterion8},
      {"9  byte-identical simulate output across runs and workers", Criterion9},
      {"10 Welch t-test reference values", Criterion10},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(static_cast<int>(i + 1))) continue;
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << criteria[i].first << " [" << Fmt("%.1f", secs) << "s] "
              << v.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
