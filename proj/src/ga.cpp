#include "fqmbl/ga.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fqmbl {

namespace {

Fitness evaluate_counted(const FitnessFunction& fitness, std::span<const int> genes, long long* evaluations) {
  if (evaluations) ++*evaluations;
  return fitness(genes);
}

void evaluate(Chromosome& c, const FitnessFunction& fitness, long long* evaluations) {
  c.fitness = evaluate_counted(fitness, c.genes, evaluations);
  c.evaluated = true;
}

bool has_member(const Population& pop, const std::vector<int>& genes, std::size_t upto) {
  for (std::size_t k = 0; k < upto; ++k)
    if (pop[k].genes == genes) return true;
  return false;
}

// Lexicographically first m-subset containing `fixed` that is not yet in pop[0, upto).
bool first_unused_subset(int n, int m, const Population& pop, std::size_t upto, std::vector<int>& out) {
  std::vector<int> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!has_member(pop, idx, upto)) {
      out = idx;
      return true;
    }
    int k = m - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - m + k) --k;
    if (k < 0) return false;
    ++idx[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < m; ++t) idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
  }
}

}  // namespace

int population_size(int n, int m, int floor) {
  if (m < 1 || m >= n) throw std::invalid_argument("population_size: requires 1 <= m < n");
  return std::max((n + m - 1) / m, floor);
}

Population init_population(int n, int m, const GAConfig& config, const FitnessFunction& fitness,
                           std::mt19937_64& rng, long long* evaluations) {
  if (config.population_floor < 2) throw std::invalid_argument("GAConfig: population_floor must be >= 2");
  const long long subsets = binomial(n, m);
  const auto size = static_cast<std::size_t>(std::min<long long>(population_size(n, m, config.population_floor), subsets));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  // Deal the shuffled genes round-robin so each appears once.
  std::vector<std::vector<int>> dealt(size);
  for (std::size_t k = 0; k < order.size(); ++k) dealt[k % size].push_back(order[k]);

  Population pop(size);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (std::size_t r = 0; r < size; ++r) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      std::vector<int> genes = dealt[r];
      while (genes.size() < static_cast<std::size_t>(m)) {
        const int g = pick(rng);
        if (std::find(genes.begin(), genes.end(), g) == genes.end()) genes.push_back(g);
      }
      std::sort(genes.begin(), genes.end());
      if (!has_member(pop, genes, r)) {
        pop[r].genes = std::move(genes);
        placed = true;
      }
    }
    if (!placed && !first_unused_subset(n, m, pop, r, pop[r].genes))
      throw std::logic_error("init_population: population exceeds the number of distinct subsets");
    evaluate(pop[r], fitness, evaluations);
  }
  return pop;
}

Chromosome generate_candidate(const Chromosome& p1, const Chromosome& p2, int m, const FitnessFunction& fitness,
                              long long* evaluations) {
  if (p1.genes == p2.genes) throw std::domain_error("generate_candidate: parents carry identical gene sets");
  std::vector<int> draft;
  std::set_union(p1.genes.begin(), p1.genes.end(), p2.genes.begin(), p2.genes.end(), std::back_inserter(draft));
  std::vector<int> droppable;
  std::set_symmetric_difference(p1.genes.begin(), p1.genes.end(), p2.genes.begin(), p2.genes.end(),
                                std::back_inserter(droppable));

  Chromosome out;
  std::vector<int> trial;
  while (draft.size() > static_cast<std::size_t>(m)) {
    std::size_t best_k = 0;
    Fitness best_fit;
    for (std::size_t k = 0; k < droppable.size(); ++k) {
      trial.clear();
      for (int g : draft)
        if (g != droppable[k]) trial.push_back(g);
      const Fitness f = evaluate_counted(fitness, trial, evaluations);
      if (k == 0 || better(f, best_fit, fitness.sense)) {
        best_k = k;
        best_fit = f;
      }
    }
    draft.erase(std::find(draft.begin(), draft.end(), droppable[best_k]));
    droppable.erase(droppable.begin() + static_cast<std::ptrdiff_t>(best_k));
    out.fitness = best_fit;
  }
  out.genes = std::move(draft);
  out.evaluated = true;
  return out;
}

std::size_t best_index(const Population& population, Sense sense) {
  std::size_t b = 0;
  for (std::size_t k = 1; k < population.size(); ++k)
    if (better(population[k].fitness, population[b].fitness, sense)) b = k;
  return b;
}

std::size_t worst_index(const Population& population, Sense sense) {
  std::size_t w = 0;
  for (std::size_t k = 1; k < population.size(); ++k)
    if (better(population[w].fitness, population[k].fitness, sense)) w = k;
  return w;
}

ReplaceOutcome replace(Population& population, const Chromosome& candidate, Sense sense) {
  const std::size_t w = worst_index(population, sense);
  if (better(population[w].fitness, candidate.fitness, sense)) return ReplaceOutcome::discarded_worse;
  for (const auto& member : population)
    if (member.genes == candidate.genes) return ReplaceOutcome::discarded_duplicate;
  population[w] = candidate;
  return ReplaceOutcome::replaced;
}

SolverReport run_ga(int n, int m, const FitnessFunction& fitness, const GAConfig& config,
                    const GAObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(config.seed);
  SolverReport report;
  report.algorithm = "ga";
  report.objective_label = fitness.label;
  report.seed = config.seed;

  Population pop = init_population(n, m, config, fitness, rng, &report.evaluations);
  Fitness best = pop[best_index(pop, fitness.sense)].fitness;

  const int limit = stagnation_limit(n, m);
  const long long cap = iteration_cap(n, m);
  std::uniform_int_distribution<std::size_t> pick(0, pop.size() - 1);
  int stale = 0;
  report.termination = Termination::iteration_cap;
  while (report.iterations < cap) {
    const std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    while (b == a) b = pick(rng);
    const Chromosome p1 = pop[a];
    const Chromosome p2 = pop[b];
    const Chromosome candidate = generate_candidate(p1, p2, m, fitness, &report.evaluations);
    const ReplaceOutcome outcome = replace(pop, candidate, fitness.sense);
    ++report.iterations;
    if (observer) observer(pop, p1, p2, candidate, outcome);

    const Fitness current = pop[best_index(pop, fitness.sense)].fitness;
    if (better(current, best, fitness.sense)) {
      best = current;
      stale = 0;
    } else {
      ++stale;
    }
    report.trace.push_back(best.value);
    if (stale >= limit) {
      report.termination = Termination::stagnation;
      break;
    }
  }

  const Chromosome& winner = pop[best_index(pop, fitness.sense)];
  report.best = winner.genes;
  report.best_fitness = winner.fitness;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolverReport run_ga(const Instance& inst, const FitnessFunction& fitness, const GAConfig& config) {
  return run_ga(inst.n, inst.m_servers, fitness, config);
}

}  // namespace fqmbl
