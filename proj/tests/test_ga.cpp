#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "fqmbl/ga.hpp"

using namespace fqmbl;

namespace {

// Sum of gene weights; larger is better.
FitnessFunction weighted(std::vector<double> w, Sense sense = Sense::maximize) {
  FitnessFunction f;
  f.sense = sense;
  f.label = "weighted";
  f.eval = [w = std::move(w)](std::span<const int> open) {
    double s = 0;
    for (int g : open) s += w[static_cast<std::size_t>(g)];
    return Fitness{s, true, 0};
  };
  return f;
}

Chromosome chrom(std::vector<int> genes, const FitnessFunction& f) {
  Chromosome c;
  c.genes = std::move(genes);
  c.fitness = f(c.genes);
  c.evaluated = true;
  return c;
}

}  // namespace

TEST(GA, PopulationSize) {
  EXPECT_EQ(population_size(20, 5, 10), 10);
  EXPECT_EQ(population_size(200, 10, 10), 20);
  EXPECT_EQ(population_size(7, 3, 2), 3);
  EXPECT_THROW(population_size(5, 5, 10), std::invalid_argument);
}

TEST(GA, Limits) {
  EXPECT_EQ(stagnation_limit(20, 5), 44);
  EXPECT_EQ(iteration_cap(20, 5), 1936);
}

TEST(GA, InitCoversEveryGeneAndIsDistinct) {
  const FitnessFunction f = weighted(std::vector<double>(23, 1.0));
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    std::mt19937_64 rng(seed);
    GAConfig cfg;
    const Population pop = init_population(23, 4, cfg, f, rng);
    std::set<int> seen;
    std::set<std::vector<int>> members;
    for (const auto& c : pop) {
      EXPECT_EQ(c.genes.size(), 4u);
      EXPECT_TRUE(std::is_sorted(c.genes.begin(), c.genes.end()));
      seen.insert(c.genes.begin(), c.genes.end());
      members.insert(c.genes);
    }
    EXPECT_EQ(seen.size(), 23u);
    EXPECT_EQ(members.size(), pop.size());
  }
}

TEST(GA, InitCappedAtSubsetCount) {
  const FitnessFunction f = weighted(std::vector<double>(4, 1.0));
  std::mt19937_64 rng(1);
  const Population pop = init_population(4, 3, GAConfig{}, f, rng);
  EXPECT_EQ(pop.size(), 4u);
}

TEST(GA, CandidateKeepsSharedGenes) {
  const FitnessFunction f = weighted({9, 1, 1, 5, 0, 7, 2, 3});
  const Chromosome c = generate_candidate(chrom({0, 1, 2}, f), chrom({0, 3, 5}, f), 3, f);
  EXPECT_EQ(c.genes, (std::vector<int>{0, 3, 5}));
  EXPECT_EQ(c.fitness.value, 21);
}

TEST(GA, CandidateSharedGeneSurvivesEvenWhenWorst) {
  const FitnessFunction f = weighted({-100, 1, 2, 3, 4});
  const Chromosome c = generate_candidate(chrom({0, 1}, f), chrom({0, 4}, f), 2, f);
  EXPECT_TRUE(std::binary_search(c.genes.begin(), c.genes.end(), 0));
}

TEST(GA, IdenticalParentsRejected) {
  const FitnessFunction f = weighted({1, 2, 3});
  EXPECT_THROW(generate_candidate(chrom({0, 1}, f), chrom({0, 1}, f), 2, f), std::domain_error);
}

TEST(GA, ReplaceRules) {
  const FitnessFunction f = weighted({1, 2, 3, 4, 5, 6});
  Population pop{chrom({0, 1}, f), chrom({2, 3}, f), chrom({4, 5}, f)};
  EXPECT_EQ(replace(pop, chrom({0, 1}, f), Sense::maximize), ReplaceOutcome::discarded_duplicate);
  EXPECT_EQ(replace(pop, chrom({0, 2}, f), Sense::maximize), ReplaceOutcome::replaced);
  EXPECT_EQ(pop[0].genes, (std::vector<int>{0, 2}));
  Population low{chrom({2, 3}, f), chrom({4, 5}, f)};
  EXPECT_EQ(replace(low, chrom({0, 1}, f), Sense::maximize), ReplaceOutcome::discarded_worse);
}

TEST(GA, FeasibleAlwaysBeatsInfeasible) {
  const Fitness feas{0.01, true, 0};
  const Fitness infeas{5, false, 0.1};
  EXPECT_TRUE(better(feas, infeas, Sense::maximize));
  EXPECT_TRUE(better(feas, infeas, Sense::minimize));
  EXPECT_TRUE(better(Fitness{-2, false, 0.1}, Fitness{-3, false, 0.2}, Sense::maximize));
  EXPECT_TRUE(better(Fitness{1, true, 0}, Fitness{2, true, 0}, Sense::minimize));
}

TEST(GA, FindsHeaviestGenes) {
  std::vector<double> w(15);
  for (int i = 0; i < 15; ++i) w[static_cast<std::size_t>(i)] = (i * 7) % 15;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) hits += run_ga(15, 3, weighted(w), GAConfig{10, seed}).best_fitness.value == 39;
  EXPECT_GE(hits, 14);
  const SolverReport r = run_ga(15, 3, weighted(w), GAConfig{10, 3});
  EXPECT_EQ(r.algorithm, "ga");
  EXPECT_EQ(static_cast<long long>(r.trace.size()), r.iterations);
}

TEST(GA, MinimizeSense) {
  const FitnessFunction f = weighted({5, 1, 7, 0, 9, 4, 3, 8, 2, 6}, Sense::minimize);
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SolverReport r = run_ga(10, 2, f, GAConfig{10, seed});
    EXPECT_LE(r.best_fitness.value, 3);
    hits += r.best_fitness.value == 1;
  }
  EXPECT_GE(hits, 14);
}

TEST(GA, StagnationStopsFlatLandscape) {
  const SolverReport r = run_ga(20, 5, weighted(std::vector<double>(20, 1.0)), GAConfig{10, 1});
  EXPECT_EQ(r.termination, Termination::stagnation);
  EXPECT_EQ(r.iterations, stagnation_limit(20, 5));
}

TEST(GA, Deterministic) {
  const FitnessFunction f = weighted({3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8});
  const SolverReport a = run_ga(12, 4, f, GAConfig{10, 77});
  const SolverReport b = run_ga(12, 4, f, GAConfig{10, 77});
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.evaluations, b.evaluations);
}
