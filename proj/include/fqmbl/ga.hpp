#ifndef FQMBL_GA_HPP
#define FQMBL_GA_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "fqmbl/fitness.hpp"
#include "fqmbl/instance.hpp"

namespace fqmbl {

/// Index-set chromosome: the open facilities, sorted ascending.
struct Chromosome {
  std::vector<int> genes;
  Fitness fitness;
  bool evaluated = false;
};

using Population = std::vector<Chromosome>;

struct GAConfig {
  int population_floor = 10;
  std::uint64_t seed = 1;
};

/// max(ceil(n / m), floor): the smallest population able to hold every gene,
/// raised to a working floor.
int population_size(int n, int m, int floor);

/// Every gene 0..n-1 appears in at least one member; members are distinct.
Population init_population(int n, int m, const GAConfig& config, const FitnessFunction& fitness,
                           std::mt19937_64& rng, long long* evaluations = nullptr);

/// Union of the parents followed by greedy drops back to size m. Genes shared
/// by both parents are never dropped. Throws std::domain_error on identical parents.
Chromosome generate_candidate(const Chromosome& p1, const Chromosome& p2, int m, const FitnessFunction& fitness,
                              long long* evaluations = nullptr);

enum class ReplaceOutcome { discarded_worse, discarded_duplicate, replaced };

/// Steady-state replacement of the worst member.
ReplaceOutcome replace(Population& population, const Chromosome& candidate, Sense sense);

/// Index of the best member (first on ties).
std::size_t best_index(const Population& population, Sense sense);
std::size_t worst_index(const Population& population, Sense sense);

/// Called after every iteration with the population, the candidate and the replacement outcome.
using GAObserver = std::function<void(const Population&, const Chromosome& p1, const Chromosome& p2,
                                      const Chromosome& candidate, ReplaceOutcome)>;

SolverReport run_ga(int n, int m, const FitnessFunction& fitness, const GAConfig& config,
                    const GAObserver& observer = {});
SolverReport run_ga(const Instance& inst, const FitnessFunction& fitness, const GAConfig& config);

}  // namespace fqmbl

#endif  // FQMBL_GA_HPP
