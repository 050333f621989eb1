#include "gsel/experiments.hpp"

#include <atomic>
#include <bit>
#include <exception>
#include <mutex>
#include <thread>

namespace gsel {

unsigned DefaultWorkers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void ParallelFor(size_t count, unsigned workers, const std::function<void(size_t)>& fn) {
  if (workers == 0) workers = DefaultWorkers();
  if (workers > count) workers = static_cast<unsigned>(count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < count && !failed; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

uint64_t GameKey(const PayoffMatrix& m) {
  uint64_t h = 0x47534C2D47414D45ull;
  for (double v : {m.a, m.b, m.c, m.d}) h = Mix64(h ^ std::bit_cast<uint64_t>(v + 0.0));
  return h;
}

uint64_t ReplicationSeed(uint64_t master_seed, const PayoffMatrix& m, Mechanism mech, int rep) {
  return DeriveSeed(master_seed, {GameKey(m), static_cast<uint64_t>(mech), static_cast<uint64_t>(rep)});
}

std::vector<double> ReplicationBatch::MeanPayoffs() const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(s.mean_payoff);
  return out;
}

std::vector<double> ReplicationBatch::BestPayoffs() const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(s.best_payoff);
  return out;
}

std::vector<double> ReplicationBatch::Spreads() const {
  std::vector<double> out;
  for (const auto& s : samples) out.push_back(s.best_payoff - s.worst_payoff);
  return out;
}

ReplicationBatch RunReplications(const PayoffMatrix& matrix, const EvolutionParams& params, Mechanism mech,
                                 int reps, uint64_t master_seed, const RunOptions& options) {
  params.Validate();
  if (reps < 1) throw InvalidInput("reps must be at least 1");
  const auto count = static_cast<size_t>(reps);
  ReplicationBatch batch;
  batch.mechanism = mech;
  batch.samples.resize(count);
  if (options.keep_populations) batch.final_populations.resize(count);
  if (options.keep_trajectories) batch.trajectories.resize(count);

  ParallelFor(count, options.workers, [&](size_t i) {
    EvolutionParams p = params;
    p.seed = ReplicationSeed(master_seed, matrix, mech, static_cast<int>(i));
    EvolutionOptions evo{options.use_cache, options.initial};
    EvolutionResult res = RunEvolution(p, matrix, mech, evo);

    GenerationStats last;
    if (res.trajectory.empty()) {
      // Nothing evolved: report the initial population as scored.
      last = ComputeStats(ScorePopulation(res.final_population, matrix, p.rounds, nullptr), p, 0);
    } else {
      last = res.trajectory.back();
    }
    batch.samples[i] = {static_cast<int>(i), p.seed, last.mean, last.best, last.worst};
    if (options.keep_populations) batch.final_populations[i] = std::move(res.final_population);
    if (options.keep_trajectories) batch.trajectories[i] = std::move(res.trajectory);
  });
  return batch;
}

std::string_view Name(Metric metric) { return metric == Metric::MeanPayoff ? "mean" : "best"; }

std::string_view Name(Classification c) {
  switch (c) {
    case Classification::GroupBetter: return "group";
    case Classification::IndividualBetter: return "individual";
    case Classification::NoDifference: return "none";
  }
  return "?";
}

int Code(Classification c) {
  switch (c) {
    case Classification::GroupBetter: return 1;
    case Classification::IndividualBetter: return -1;
    case Classification::NoDifference: return 0;
  }
  return 0;
}

Classification Classify(const WelchResult& test, double mean_group, double mean_indiv, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  if (test.p < alpha) {
    if (mean_group > mean_indiv) return Classification::GroupBetter;
    if (mean_indiv > mean_group) return Classification::IndividualBetter;
  }
  return Classification::NoDifference;
}

SweepCellResult CompareSamples(const PayoffMatrix& matrix, Metric metric, const std::vector<double>& group,
                               const std::vector<double>& indiv, double alpha) {
  SweepCellResult r;
  r.matrix = matrix;
  r.metric = metric;
  r.mean_group = Mean(group);
  r.mean_indiv = Mean(indiv);
  r.sd_group = SampleSd(group);
  r.sd_indiv = SampleSd(indiv);
  r.test = WelchTTest(group, indiv);
  r.classification = Classify(r.test, r.mean_group, r.mean_indiv, alpha);
  return r;
}

CellComparison CompareCell(const PayoffMatrix& matrix, const EvolutionParams& params, int reps, double alpha,
                           uint64_t master_seed, const RunOptions& options) {
  if (reps < 2) throw InvalidInput("reps must be at least 2 for a t-test");
  RunOptions opts = options;
  opts.keep_populations = false;
  opts.keep_trajectories = false;
  const auto group = RunReplications(matrix, params, Mechanism::Group, reps, master_seed, opts);
  const auto indiv = RunReplications(matrix, params, Mechanism::Individual, reps, master_seed, opts);
  return {CompareSamples(matrix, Metric::MeanPayoff, group.MeanPayoffs(), indiv.MeanPayoffs(), alpha),
          CompareSamples(matrix, Metric::BestPayoff, group.BestPayoffs(), indiv.BestPayoffs(), alpha)};
}

SweepCellResult ClassifyCell(const PayoffMatrix& matrix, const EvolutionParams& params, int reps, double alpha,
                             Metric metric, uint64_t master_seed, const RunOptions& options) {
  auto both = CompareCell(matrix, params, reps, alpha, master_seed, options);
  return metric == Metric::MeanPayoff ? both.mean : both.best;
}

SweepResult RunSweep(const std::vector<GridGame>& space, const EvolutionParams& params, int reps, double alpha,
                     uint64_t master_seed, const RunOptions& options) {
  if (space.empty()) throw InvalidInput("sweep space is empty");
  params.Validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  SweepResult result;
  result.space = space;
  result.mean.resize(space.size());
  result.best.resize(space.size());
  RunOptions cell_opts = options;
  cell_opts.workers = 1;
  ParallelFor(space.size(), options.workers, [&](size_t i) {
    const PayoffMatrix m = space[i].ToMatrix();
    try {
      auto cell = CompareCell(m, params, reps, alpha, master_seed, cell_opts);
      result.mean[i] = cell.mean;
      result.best[i] = cell.best;
    } catch (const std::exception& e) {
      throw SweepError("sweep cell " + m.Inspect() + " failed: " + e.what());
    }
  });
  return result;
}

Classification ExpectedClassification(Region r) {
  switch (r) {
    case Region::R1:
    case Region::R2:
    case Region::R3: return Classification::GroupBetter;
    case Region::R4: return Classification::IndividualBetter;
    case Region::Unclassified: break;
  }
  return Classification::NoDifference;
}

std::vector<RegionAgreement> SummarizeRegions(const std::vector<SweepCellResult>& mean_cells) {
  std::vector<RegionAgreement> out;
  for (Region r : {Region::R1, Region::R2, Region::R3, Region::R4})
    out.push_back({r, ExpectedClassification(r), 0, 0});
  for (const auto& cell : mean_cells) {
    const Region r = RegionOf(cell.matrix);
    if (r == Region::Unclassified) continue;
    auto& agg = out[static_cast<size_t>(r)];
    ++agg.cells;
    if (cell.classification == agg.expected) ++agg.matched;
  }
  return out;
}

std::vector<std::string> FrequencyColumnLabels(int k) {
  std::vector<std::string> labels;
  for (int i = k; i >= 1; --i) labels.push_back("Hist-" + std::to_string(i));
  for (uint32_t h = 0; h < (1u << k); ++h) {
    std::string s;
    for (int i = k - 1; i >= 0; --i) s.push_back(((h >> i) & 1u) ? 'C' : 'D');
    labels.push_back(s);
  }
  return labels;
}

StrategyFrequencyTable StrategyFrequencies(const std::vector<GroupedPopulation>& populations, int k) {
  StrategyFrequencyTable table;
  table.k = k;
  const size_t len = Strategy::LengthFor(k);
  std::vector<uint64_t> ones(len, 0);
  for (const auto& pop : populations) {
    if (pop.Memory() != k) throw InvalidInput("population memory differs from k");
    for (const auto& g : pop.Groups())
      for (const auto& s : g) {
        for (size_t p = 0; p < len; ++p) ones[p] += static_cast<uint64_t>(s.At(p));
        ++table.strategies;
      }
  }
  table.cooperate.assign(len, 0.0);
  if (table.strategies > 0)
    for (size_t p = 0; p < len; ++p)
      table.cooperate[p] = static_cast<double>(ones[p]) / static_cast<double>(table.strategies);
  return table;
}

}  // namespace gsel
