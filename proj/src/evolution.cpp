#include "gsel/evolution.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <string>

namespace gsel {

std::string_view Name(Mechanism mech) {
  return mech == Mechanism::Group ? "group" : "individual";
}

Mechanism ParseMechanism(std::string_view name) {
  std::string key;
  for (char ch : name) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (key == "group") return Mechanism::Group;
  if (key == "individual" || key == "indiv") return Mechanism::Individual;
  throw InvalidInput("unknown mechanism '" + std::string(name) + "' (expected group or individual)");
}

void EvolutionParams::Validate() const {
  auto fail = [](const std::string& msg) { throw InvalidInput(msg); };
  if (n < 1) fail("n must be positive");
  if (m < 1) fail("m must be positive");
  if (n % m != 0) fail("m must divide n (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  if (n % 2 != 0) fail("n must be even (n/2 elite individuals)");
  if (m % 2 != 0) fail("m must be even (m/2 elite groups)");
  if (n / m < 2) fail("group size n/m must be at least 2");
  if (n / 2 < 2) fail("n/2 must be at least 2 so parents can be distinct");
  if (k < 1 || k > kMaxMemory) fail("k must be in [1, " + std::to_string(kMaxMemory) + "]");
  if (rounds < 1) fail("r (rounds) must be at least 1");
  if (generations < 0) fail("generations must be non-negative");
  if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0)) fail("mutation_prob must be in [0, 1]");
}

GroupedPopulation::GroupedPopulation(std::vector<std::vector<Strategy>> groups) : groups_(std::move(groups)) {
  if (groups_.empty()) throw InvalidInput("population needs at least one group");
  const size_t size = groups_.front().size();
  if (size == 0) throw InvalidInput("groups must be non-empty");
  const int k = groups_.front().front().Memory();
  for (const auto& g : groups_) {
    if (g.size() != size) throw InvalidInput("all groups must have equal size");
    for (const auto& s : g)
      if (s.Memory() != k) throw InvalidInput("all strategies must share memory length k");
  }
}

std::vector<Strategy> GroupedPopulation::Flatten() const {
  std::vector<Strategy> out;
  out.reserve(Size());
  for (const auto& g : groups_) out.insert(out.end(), g.begin(), g.end());
  return out;
}

GroupedPopulation GroupedPopulation::Deal(const std::vector<Strategy>& members, int m) {
  if (m < 1 || members.size() % static_cast<size_t>(m) != 0)
    throw InvalidInput("cannot deal population into equal groups");
  const size_t size = members.size() / static_cast<size_t>(m);
  std::vector<std::vector<Strategy>> groups(static_cast<size_t>(m));
  for (size_t g = 0; g < groups.size(); ++g)
    groups[g].assign(members.begin() + static_cast<std::ptrdiff_t>(g * size),
                     members.begin() + static_cast<std::ptrdiff_t>((g + 1) * size));
  return GroupedPopulation(std::move(groups));
}

GroupedPopulation RandomPopulation(const EvolutionParams& params, Rng& rng) {
  params.Validate();
  const size_t len = Strategy::LengthFor(params.k);
  std::bernoulli_distribution coin(0.5);
  std::vector<Strategy> members;
  members.reserve(static_cast<size_t>(params.n));
  for (int i = 0; i < params.n; ++i) {
    uint64_t bits = 0;
    for (size_t p = 0; p < len; ++p)
      if (coin(rng)) bits |= uint64_t{1} << p;
    members.emplace_back(params.k, bits);
  }
  return GroupedPopulation::Deal(members, params.m);
}

GroupedPopulation UniformPopulation(const EvolutionParams& params, const Strategy& s) {
  params.Validate();
  if (s.Memory() != params.k) throw InvalidInput("strategy memory does not match k");
  return GroupedPopulation::Deal(std::vector<Strategy>(static_cast<size_t>(params.n), s), params.m);
}

ScoreSheet ScorePopulation(const GroupedPopulation& pop, const PayoffMatrix& m, int rounds,
                           MatchPayoffCache* cache) {
  ScoreSheet sheet;
  sheet.individual.assign(pop.Size(), 0.0);
  sheet.group.assign(pop.GroupCount(), 0.0);
  const size_t size = pop.GroupSize();
  for (size_t g = 0; g < pop.GroupCount(); ++g) {
    const auto& members = pop.Groups()[g];
    double* scores = sheet.individual.data() + g * size;
    for (size_t i = 0; i < size; ++i) {
      for (size_t j = i + 1; j < size; ++j) {
        const MatchOutcome out = cache ? CachedMatch(*cache, members[i], members[j], m, rounds)
                                       : PlayMatchFast(members[i], members[j], m, rounds);
        scores[i] += out.total_row;
        scores[j] += out.total_col;
      }
    }
    sheet.group[g] = std::accumulate(scores, scores + size, 0.0);
  }
  return sheet;
}

GenerationStats ComputeStats(const ScoreSheet& scores, const EvolutionParams& params, int generation) {
  const double norm = static_cast<double>(params.GroupSize() - 1) * params.rounds;
  const auto [lo, hi] = std::minmax_element(scores.individual.begin(), scores.individual.end());
  const double total = std::accumulate(scores.individual.begin(), scores.individual.end(), 0.0);
  return {generation, *hi / norm, *lo / norm,
          total / (norm * static_cast<double>(scores.individual.size()))};
}

Strategy CrossoverAt(const Strategy& p1, const Strategy& p2, size_t break_point) {
  if (p1.Memory() != p2.Memory()) throw InvalidInput("crossover parents differ in length");
  if (break_point < 1 || break_point >= p1.Length())
    throw InvalidInput("crossover break point must lie in [1, L-1]");
  const uint64_t head = (uint64_t{1} << break_point) - 1;
  return Strategy(p1.Memory(), (p1.Bits() & head) | (p2.Bits() & ~head));
}

Strategy Crossover(const Strategy& p1, const Strategy& p2, Rng& rng) {
  if (p1.Memory() != p2.Memory()) throw InvalidInput("crossover parents differ in length");
  std::uniform_int_distribution<size_t> pick(1, p1.Length() - 1);
  return CrossoverAt(p1, p2, pick(rng));
}

Strategy Mutate(const Strategy& s, double prob, Rng& rng) {
  std::bernoulli_distribution happens(prob);
  if (!happens(rng)) return s;
  std::uniform_int_distribution<size_t> pos(0, s.Length() - 1);
  return s.WithFlipped(pos(rng));
}

namespace {

// Indices sorted by descending score; equal scores end up in uniformly random order.
std::vector<size_t> RankDescending(const std::vector<double>& scores, Rng& rng) {
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) { return scores[x] > scores[y]; });
  return order;
}

Strategy Breed(const std::vector<Strategy>& parents, double mutation_prob, Rng& rng) {
  std::uniform_int_distribution<size_t> first(0, parents.size() - 1);
  std::uniform_int_distribution<size_t> second(0, parents.size() - 2);
  const size_t i = first(rng);
  size_t j = second(rng);
  if (j >= i) ++j;
  return Mutate(Crossover(parents[i], parents[j], rng), mutation_prob, rng);
}

void CheckScores(const GroupedPopulation& pop, const ScoreSheet& scores) {
  if (scores.individual.size() != pop.Size() || scores.group.size() != pop.GroupCount())
    throw InvalidInput("score sheet does not match population");
}

}  // namespace

GroupedPopulation SelectIndividual(const GroupedPopulation& pop, const ScoreSheet& scores,
                                   const EvolutionParams& params, Rng& rng) {
  CheckScores(pop, scores);
  const auto members = pop.Flatten();
  const auto order = RankDescending(scores.individual, rng);
  const size_t elites = members.size() / 2;

  std::vector<Strategy> parents;
  parents.reserve(elites);
  for (size_t r = 0; r < elites; ++r) parents.push_back(members[order[r]]);

  std::vector<Strategy> next = parents;
  next.reserve(members.size());
  while (next.size() < members.size()) next.push_back(Breed(parents, params.mutation_prob, rng));

  std::shuffle(next.begin(), next.end(), rng);
  return GroupedPopulation::Deal(next, static_cast<int>(pop.GroupCount()));
}

GroupedPopulation SelectGroup(const GroupedPopulation& pop, const ScoreSheet& scores,
                              const EvolutionParams& params, Rng& rng) {
  CheckScores(pop, scores);
  const auto order = RankDescending(scores.group, rng);
  const size_t elites = pop.GroupCount() / 2;

  std::vector<std::vector<Strategy>> groups;
  groups.reserve(pop.GroupCount());
  std::vector<Strategy> pool;
  for (size_t r = 0; r < elites; ++r) {
    const auto& g = pop.Groups()[order[r]];
    groups.push_back(g);
    pool.insert(pool.end(), g.begin(), g.end());
  }
  while (groups.size() < pop.GroupCount()) {
    std::vector<Strategy> children;
    children.reserve(pop.GroupSize());
    for (size_t i = 0; i < pop.GroupSize(); ++i) children.push_back(Breed(pool, params.mutation_prob, rng));
    groups.push_back(std::move(children));
  }
  return GroupedPopulation(std::move(groups));
}

EvolutionResult RunEvolution(const EvolutionParams& params, const PayoffMatrix& matrix, Mechanism mech,
                             const EvolutionOptions& options) {
  params.Validate();
  Rng rng = MakeRng(params.seed);
  EvolutionResult result;
  if (options.initial) {
    const auto& init = *options.initial;
    if (init.Size() != static_cast<size_t>(params.n) || init.GroupCount() != static_cast<size_t>(params.m) ||
        init.Memory() != params.k)
      throw InvalidInput("initial population does not match n, m, k");
    result.final_population = init;
  } else {
    result.final_population = RandomPopulation(params, rng);
  }

  std::optional<MatchPayoffCache> cache;
  if (options.use_cache) cache.emplace(matrix, params.rounds);

  result.trajectory.reserve(static_cast<size_t>(params.generations));
  for (int gen = 0; gen < params.generations; ++gen) {
    const ScoreSheet scores =
        ScorePopulation(result.final_population, matrix, params.rounds, cache ? &*cache : nullptr);
    result.trajectory.push_back(ComputeStats(scores, params, gen));
    result.final_population = mech == Mechanism::Group
                                  ? SelectGroup(result.final_population, scores, params, rng)
                                  : SelectIndividual(result.final_population, scores, params, rng);
  }
  return result;
}

}  // namespace gsel
