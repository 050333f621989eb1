#ifndef GSEL_EVOLUTION_HPP
#define GSEL_EVOLUTION_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "gsel/games.hpp"
#include "gsel/match.hpp"
#include "gsel/rng.hpp"
#include "gsel/strategy.hpp"

namespace gsel {

enum class Mechanism { Individual, Group };
std::string_view Name(Mechanism mech);
Mechanism ParseMechanism(std::string_view name);

struct EvolutionParams {
  int n = 64;              // population size
  int m = 8;               // number of groups
  int k = 3;               // memory length
  int rounds = 200;        // rounds per match
  int generations = 1000;
  double mutation_prob = 0.05;
  uint64_t seed = 0;

  int GroupSize() const { return n / m; }
  // Throws InvalidInput naming the offending field.
  void Validate() const;
};

class GroupedPopulation {
 public:
  GroupedPopulation() = default;
  explicit GroupedPopulation(std::vector<std::vector<Strategy>> groups);

  const std::vector<std::vector<Strategy>>& Groups() const { return groups_; }
  size_t GroupCount() const { return groups_.size(); }
  size_t GroupSize() const { return groups_.empty() ? 0 : groups_.front().size(); }
  size_t Size() const { return GroupCount() * GroupSize(); }
  int Memory() const { return groups_.empty() ? 0 : groups_.front().front().Memory(); }

  // Members in group order; index g * GroupSize() + i.
  std::vector<Strategy> Flatten() const;
  // Deals `members` in order into `m` equal groups.
  static GroupedPopulation Deal(const std::vector<Strategy>& members, int m);

  friend bool operator==(const GroupedPopulation&, const GroupedPopulation&) = default;

 private:
  std::vector<std::vector<Strategy>> groups_;
};

// Indexed like GroupedPopulation::Flatten().
struct ScoreSheet {
  std::vector<double> individual;
  std::vector<double> group;
  friend bool operator==(const ScoreSheet&, const ScoreSheet&) = default;
};

// Normalized payoffs: individual score / ((group size - 1) * rounds).
struct GenerationStats {
  int generation = 0;
  double best = 0.0;
  double worst = 0.0;
  double mean = 0.0;
  friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

GroupedPopulation RandomPopulation(const EvolutionParams& params, Rng& rng);
GroupedPopulation UniformPopulation(const EvolutionParams& params, const Strategy& s);

// Round-robin within each group. A null cache evaluates every match directly.
ScoreSheet ScorePopulation(const GroupedPopulation& pop, const PayoffMatrix& m, int rounds,
                           MatchPayoffCache* cache);

GenerationStats ComputeStats(const ScoreSheet& scores, const EvolutionParams& params, int generation);

// One-point crossover; `break_point` in [1, L-1]: p1's bits before it, p2's from it on.
Strategy CrossoverAt(const Strategy& p1, const Strategy& p2, size_t break_point);
Strategy Crossover(const Strategy& p1, const Strategy& p2, Rng& rng);
// With probability `prob`, flips one uniformly chosen bit.
Strategy Mutate(const Strategy& s, double prob, Rng& rng);

GroupedPopulation SelectIndividual(const GroupedPopulation& pop, const ScoreSheet& scores,
                                   const EvolutionParams& params, Rng& rng);
GroupedPopulation SelectGroup(const GroupedPopulation& pop, const ScoreSheet& scores,
                              const EvolutionParams& params, Rng& rng);

struct EvolutionOptions {
  bool use_cache = true;
  std::optional<GroupedPopulation> initial;  // replaces the random initial population
};

struct EvolutionResult {
  std::vector<GenerationStats> trajectory;
  GroupedPopulation final_population;  // after the last selection step
};

EvolutionResult RunEvolution(const EvolutionParams& params, const PayoffMatrix& matrix, Mechanism mech,
                             const EvolutionOptions& options = {});

}  // namespace gsel

#endif  // GSEL_EVOLUTION_HPP
