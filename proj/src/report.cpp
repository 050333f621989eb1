#include "gsel/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gsel {

namespace fs = std::filesystem;

std::string FormatNumber(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string Header(std::string_view kind) {
  return "# gsel-" + std::string(kind) + " v" + std::to_string(kSchemaVersion);
}

void WriteFile(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw OutputError("failed writing '" + path.string() + "'");
}

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw OutputError("cannot create output directory '" + dir.string() + "'" +
                      (ec ? ": " + ec.message() : std::string()));
}

std::string PaddedIndex(int i, int count) {
  int width = 3;
  for (int c = count - 1; c >= 1000; c /= 10) ++width;
  std::string s = std::to_string(i);
  return std::string(static_cast<size_t>(std::max(0, width - static_cast<int>(s.size()))), '0') + s;
}

}  // namespace

void WriteTrajectoryCsv(const fs::path& path, const std::vector<GenerationStats>& trajectory) {
  std::ostringstream ss;
  ss << Header("trajectory") << "\n" << "generation,best,worst,mean\n";
  for (const auto& g : trajectory)
    ss << g.generation << ',' << FormatNumber(g.best) << ',' << FormatNumber(g.worst) << ','
       << FormatNumber(g.mean) << '\n';
  WriteFile(path, ss.str());
}

void WriteAggregateCsv(const fs::path& path, const std::vector<std::vector<GenerationStats>>& trajectories) {
  std::ostringstream ss;
  ss << Header("aggregate") << "\n" << "generation,best,worst,mean\n";
  const size_t gens = trajectories.empty() ? 0 : trajectories.front().size();
  for (const auto& t : trajectories)
    if (t.size() != gens) throw OutputError("replication trajectories differ in length");
  const double reps = static_cast<double>(trajectories.size());
  for (size_t g = 0; g < gens; ++g) {
    double best = 0.0, worst = 0.0, mean = 0.0;
    for (const auto& t : trajectories) {
      best += t[g].best;
      worst += t[g].worst;
      mean += t[g].mean;
    }
    ss << g << ',' << FormatNumber(best / reps) << ',' << FormatNumber(worst / reps) << ','
       << FormatNumber(mean / reps) << '\n';
  }
  WriteFile(path, ss.str());
}

void WriteSweepCsv(const fs::path& path, const SweepResult& sweep) {
  std::ostringstream ss;
  ss << Header("sweep") << "\n"
     << "b,c,d,metric,mean_group,sd_group,mean_indiv,sd_indiv,t,dof,p,class,flag\n";
  for (const auto* cells : {&sweep.mean, &sweep.best}) {
    for (size_t i = 0; i < cells->size(); ++i) {
      const auto& g = sweep.space[i];
      const auto& r = (*cells)[i];
      ss << g.b.ToString() << ',' << g.c.ToString() << ',' << g.d.ToString() << ',' << Name(r.metric) << ','
         << FormatNumber(r.mean_group) << ',' << FormatNumber(r.sd_group) << ',' << FormatNumber(r.mean_indiv)
         << ',' << FormatNumber(r.sd_indiv) << ',' << FormatNumber(r.test.t) << ',' << FormatNumber(r.test.dof)
         << ',' << FormatNumber(r.test.p) << ',' << Name(r.classification) << ','
         << (r.test.degenerate ? "degenerate" : "") << '\n';
    }
  }
  WriteFile(path, ss.str());
}

std::vector<fs::path> WriteHeatmaps(const fs::path& dir, const SweepResult& sweep) {
  std::set<Tenths> bs, cs, ds;
  std::map<GridGame, size_t> index;
  for (size_t i = 0; i < sweep.space.size(); ++i) {
    const auto& g = sweep.space[i];
    bs.insert(g.b);
    cs.insert(g.c);
    ds.insert(g.d);
    index[{Tenths{0}, g.b, g.c, g.d}] = i;
  }
  std::vector<fs::path> written;
  for (const auto* cells : {&sweep.mean, &sweep.best}) {
    if (cells->empty()) continue;
    const auto metric = Name(cells->front().metric);
    for (Tenths d : ds) {
      std::ostringstream ss;
      ss << Header("heatmap") << " metric=" << metric << " d=" << d.ToString() << "\n" << "c\\b";
      for (Tenths b : bs) ss << ',' << b.ToString();
      ss << '\n';
      for (auto c = cs.rbegin(); c != cs.rend(); ++c) {
        ss << c->ToString();
        for (Tenths b : bs) {
          auto it = index.find({Tenths{0}, b, *c, d});
          ss << ',';
          if (it != index.end()) ss << Code((*cells)[it->second].classification);
        }
        ss << '\n';
      }
      const fs::path path = dir / ("heatmap_" + std::string(metric) + "_d" + d.ToString() + ".csv");
      WriteFile(path, ss.str());
      written.push_back(path);
    }
  }
  return written;
}

void WriteRegionSummary(const fs::path& path, const std::vector<RegionAgreement>& regions) {
  std::ostringstream ss;
  ss << Header("regions") << "\n" << "region,expected,cells,matched,fraction\n";
  for (const auto& r : regions)
    ss << Name(r.region) << ',' << Name(r.expected) << ',' << r.cells << ',' << r.matched << ','
       << FormatNumber(r.Fraction()) << '\n';
  WriteFile(path, ss.str());
}

void WriteFrequencyCsv(const fs::path& path, const std::vector<std::pair<Mechanism, StrategyFrequencyTable>>& rows) {
  std::ostringstream ss;
  ss << Header("frequencies") << "\n" << "mechanism";
  const int k = rows.empty() ? 0 : rows.front().second.k;
  for (const auto& label : FrequencyColumnLabels(k)) ss << ',' << label;
  ss << '\n';
  for (const auto& [mech, table] : rows) {
    ss << Name(mech);
    for (double f : table.cooperate) ss << ',' << FormatNumber(f);
    ss << '\n';
  }
  WriteFile(path, ss.str());
}

namespace {

RunOptions OptionsFor(const RunConfig& cfg) {
  RunOptions opts;
  opts.workers = cfg.workers;
  opts.use_cache = cfg.use_cache;
  switch (cfg.init) {
    case InitialPopulation::Random: break;
    case InitialPopulation::AllCooperate:
      opts.initial = UniformPopulation(cfg.params, Strategy::AllCooperate(cfg.params.k));
      break;
    case InitialPopulation::AllDefect:
      opts.initial = UniformPopulation(cfg.params, Strategy::AllDefect(cfg.params.k));
      break;
  }
  return opts;
}

}  // namespace

void CmdSimulate(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.output_dir;
  EnsureDir(dir);
  RunOptions opts = OptionsFor(cfg);
  opts.keep_trajectories = true;
  opts.keep_populations = false;
  for (Mechanism mech : cfg.mechanisms) {
    log << "simulate " << Name(mech) << ": " << cfg.reps << " replications of " << cfg.game.Inspect() << "\n";
    const auto batch = RunReplications(cfg.game, cfg.params, mech, cfg.reps, cfg.master_seed, opts);
    const std::string tag(Name(mech));
    for (int i = 0; i < cfg.reps; ++i)
      WriteTrajectoryCsv(dir / ("trajectory_" + tag + "_rep" + PaddedIndex(i, cfg.reps) + ".csv"),
                         batch.trajectories[static_cast<size_t>(i)]);
    WriteAggregateCsv(dir / ("aggregate_" + tag + ".csv"), batch.trajectories);
  }
}

void CmdSweep(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.output_dir;
  EnsureDir(dir);
  const auto space = EnumerateGameSpace(cfg.a_fixed, cfg.grid);
  log << "sweep: " << space.size() << " cells, a=" << cfg.a_fixed.ToString() << ", " << cfg.reps
      << " replications per mechanism\n";
  RunOptions opts = OptionsFor(cfg);
  const auto sweep = RunSweep(space, cfg.params, cfg.reps, cfg.alpha, cfg.master_seed, opts);
  WriteSweepCsv(dir / "sweep.csv", sweep);
  WriteHeatmaps(dir, sweep);
  const auto regions = SummarizeRegions(sweep.mean);
  WriteRegionSummary(dir / "regions.csv", regions);
  for (const auto& r : regions)
    log << "  " << Name(r.region) << ": " << r.matched << "/" << r.cells << " cells " << Name(r.expected) << "\n";
}

void CmdFrequencies(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = cfg.output_dir;
  EnsureDir(dir);
  RunOptions opts = OptionsFor(cfg);
  opts.keep_populations = true;
  std::vector<std::pair<Mechanism, StrategyFrequencyTable>> rows;
  for (Mechanism mech : cfg.mechanisms) {
    log << "frequencies " << Name(mech) << ": " << cfg.reps << " replications of " << cfg.game.Inspect() << "\n";
    const auto batch = RunReplications(cfg.game, cfg.params, mech, cfg.reps, cfg.master_seed, opts);
    rows.emplace_back(mech, StrategyFrequencies(batch.final_populations, cfg.params.k));
  }
  WriteFrequencyCsv(dir / "frequencies.csv", rows);
}

int Execute(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  try {
    switch (cfg.command) {
      case Command::Simulate: CmdSimulate(cfg, log); break;
      case Command::Sweep: CmdSweep(cfg, log); break;
      case Command::Frequencies: CmdFrequencies(cfg, log); break;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace gsel
