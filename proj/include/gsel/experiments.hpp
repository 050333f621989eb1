#ifndef GSEL_EXPERIMENTS_HPP
#define GSEL_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gsel/evolution.hpp"
#include "gsel/games.hpp"
#include "gsel/stats.hpp"

namespace gsel {

// Runs fn(0..count-1) on up to `workers` threads (0 = hardware concurrency).
// The first exception thrown by any task is rethrown after all threads join.
void ParallelFor(size_t count, unsigned workers, const std::function<void(size_t)>& fn);
unsigned DefaultWorkers();

// Stable identity of a game, used to derive per-replication seeds independent of
// where the game sits in a sweep.
uint64_t GameKey(const PayoffMatrix& m);
uint64_t ReplicationSeed(uint64_t master_seed, const PayoffMatrix& m, Mechanism mech, int rep);

struct ReplicationSample {
  int replication = 0;
  uint64_t seed = 0;
  double mean_payoff = 0.0;
  double best_payoff = 0.0;
  double worst_payoff = 0.0;
};

struct RunOptions {
  unsigned workers = 1;
  bool use_cache = true;
  bool keep_trajectories = false;
  bool keep_populations = true;
  std::optional<GroupedPopulation> initial;
};

struct ReplicationBatch {
  Mechanism mechanism = Mechanism::Group;
  std::vector<ReplicationSample> samples;
  std::vector<GroupedPopulation> final_populations;           // if keep_populations
  std::vector<std::vector<GenerationStats>> trajectories;     // if keep_trajectories

  std::vector<double> MeanPayoffs() const;
  std::vector<double> BestPayoffs() const;
  std::vector<double> Spreads() const;  // best - worst
};

// `params.seed` is ignored; each replication gets ReplicationSeed(master_seed, ...).
ReplicationBatch RunReplications(const PayoffMatrix& matrix, const EvolutionParams& params, Mechanism mech,
                                 int reps, uint64_t master_seed, const RunOptions& options = {});

enum class Metric { MeanPayoff, BestPayoff };
std::string_view Name(Metric metric);

enum class Classification { GroupBetter, IndividualBetter, NoDifference };
std::string_view Name(Classification c);
int Code(Classification c);  // 1, -1, 0

Classification Classify(const WelchResult& test, double mean_group, double mean_indiv, double alpha);

struct SweepCellResult {
  PayoffMatrix matrix;
  Metric metric = Metric::MeanPayoff;
  double mean_group = 0.0, mean_indiv = 0.0;
  double sd_group = 0.0, sd_indiv = 0.0;
  WelchResult test;  // group minus individual
  Classification classification = Classification::NoDifference;
};

SweepCellResult CompareSamples(const PayoffMatrix& matrix, Metric metric, const std::vector<double>& group,
                               const std::vector<double>& indiv, double alpha);

struct CellComparison {
  SweepCellResult mean;
  SweepCellResult best;
};

// Runs both mechanisms once and compares them on both metrics.
CellComparison CompareCell(const PayoffMatrix& matrix, const EvolutionParams& params, int reps, double alpha,
                           uint64_t master_seed, const RunOptions& options = {});
SweepCellResult ClassifyCell(const PayoffMatrix& matrix, const EvolutionParams& params, int reps, double alpha,
                             Metric metric, uint64_t master_seed, const RunOptions& options = {});

class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepResult {
  std::vector<GridGame> space;
  std::vector<SweepCellResult> mean;  // enumeration order
  std::vector<SweepCellResult> best;
};

// Cells run concurrently on options.workers threads; output order follows `space`.
SweepResult RunSweep(const std::vector<GridGame>& space, const EvolutionParams& params, int reps, double alpha,
                     uint64_t master_seed, const RunOptions& options = {});

// Agreement of mean-payoff classifications with the approximate region labels.
// R1-R3 expect GroupBetter, R4 IndividualBetter.
struct RegionAgreement {
  Region region = Region::Unclassified;
  Classification expected = Classification::NoDifference;
  int cells = 0;
  int matched = 0;
  double Fraction() const { return cells == 0 ? 0.0 : static_cast<double>(matched) / cells; }
};

Classification ExpectedClassification(Region r);
// One entry per region R1..R4, in that order.
std::vector<RegionAgreement> SummarizeRegions(const std::vector<SweepCellResult>& mean_cells);

struct StrategyFrequencyTable {
  int k = 0;
  std::vector<double> cooperate;  // per bit position, k + 2^k entries
  size_t strategies = 0;
};

// Hist-k .. Hist-1, then response states DD..D through CC..C.
std::vector<std::string> FrequencyColumnLabels(int k);
StrategyFrequencyTable StrategyFrequencies(const std::vector<GroupedPopulation>& populations, int k);

}  // namespace gsel

#endif  // GSEL_EXPERIMENTS_HPP
