#include <gtest/gtest.h>

#include <cmath>

#include "fqmbl/aco.hpp"
#include "fqmbl/instances.hpp"

using namespace fqmbl;

namespace {

FitnessFunction weighted(std::vector<double> w, Sense sense = Sense::maximize) {
  FitnessFunction f;
  f.sense = sense;
  f.eval = [w = std::move(w)](std::span<const int> open) {
    double s = 0;
    for (int g : open) s += w[static_cast<std::size_t>(g)];
    return Fitness{s, true, 0};
  };
  return f;
}

}  // namespace

TEST(ACO, AntCount) {
  EXPECT_EQ(ant_count(20, 5, 2), 8);
  EXPECT_EQ(ant_count(20, 5, 3), 12);
  EXPECT_EQ(ant_count(7, 3, 1), 3);
}

TEST(ACO, SelectionTwoToOne) {
  ACOConfig cfg;
  cfg.alpha_exp = 1;
  cfg.beta_exp = 1;
  PheromoneState s{Eigen::Vector3d(2, 1, 5)};
  const Eigen::Vector3d eta(0.5, 0.5, 0.5);
  const std::vector<int> chosen{2};
  const Eigen::VectorXd p = selection_probabilities(s, eta, chosen, cfg);
  EXPECT_NEAR(p(0), 2.0 / 3, 1e-12);
  EXPECT_NEAR(p(1), 1.0 / 3, 1e-12);
  EXPECT_EQ(p(2), 0);
}

TEST(ACO, SelectionFallsBackToUniform) {
  ACOConfig cfg;
  PheromoneState s{Eigen::Vector3d(0, 0, 0)};
  const Eigen::VectorXd p = selection_probabilities(s, Eigen::Vector3d(1, 1, 1), std::vector<int>{0}, cfg);
  EXPECT_DOUBLE_EQ(p(1), 0.5);
  EXPECT_DOUBLE_EQ(p(2), 0.5);
}

TEST(ACO, EvaporationOnly) {
  ACOConfig cfg;
  PheromoneState s = PheromoneState::uniform(4, 100);
  const PheromoneState next = pheromone_update(s, {}, cfg, Sense::maximize);
  EXPECT_DOUBLE_EQ(next.tau(0), 97);
}

TEST(ACO, DepositScaledByObjective) {
  ACOConfig cfg;
  cfg.max_pheromone = 200;
  PheromoneState s = PheromoneState::uniform(4, 0.0);
  std::vector<Ant> colony{{{0, 1}, Fitness{0.9, true, 0}}};
  PheromoneState next = pheromone_update(s, colony, cfg, Sense::maximize);
  EXPECT_NEAR(next.tau(0), 180, 1e-9);
  EXPECT_EQ(next.tau(3), kMinPheromone);

  colony = {{{0, 1}, Fitness{4, true, 0}}};
  next = pheromone_update(s, colony, cfg, Sense::minimize);
  EXPECT_NEAR(next.tau(0), 50, 1e-9);
}

TEST(ACO, DepositClampedAndPenaltySkipped) {
  ACOConfig cfg;
  PheromoneState s = PheromoneState::uniform(3, 150);
  std::vector<Ant> colony{{{0}, Fitness{1, true, 0}}, {{1}, Fitness{-2, false, 1}}};
  const PheromoneState next = pheromone_update(s, colony, cfg, Sense::maximize);
  EXPECT_EQ(next.tau(0), cfg.max_pheromone);
  EXPECT_NEAR(next.tau(1), 0.97 * 150, 1e-9);
}

TEST(ACO, HeuristicIndexNormalized) {
  GeneratorParams p;
  p.n = 9;
  p.m_servers = 3;
  const Instance inst = generate_instance(p);
  const Eigen::VectorXd eta = heuristic_index(inst);
  EXPECT_NEAR(eta.sum(), 1.0, 1e-12);
  const Eigen::VectorXd raw = heuristic_index_raw(inst);
  for (int j = 0; j < 9; ++j) EXPECT_NEAR(raw(j), inst.service[j].mid / inst.distance.col(j).sum(), 1e-12);
  EXPECT_EQ(heuristic_index(inst), eta);
}

TEST(ACO, ConstructDistinctSorted) {
  std::mt19937_64 rng(5);
  ACOConfig cfg;
  const PheromoneState s = PheromoneState::uniform(10);
  const Eigen::VectorXd eta = Eigen::VectorXd::Constant(10, 0.1);
  for (int k = 0; k < 200; ++k) {
    const auto sol = construct_solution(s, eta, 4, cfg, rng);
    ASSERT_EQ(sol.size(), 4u);
    EXPECT_TRUE(std::adjacent_find(sol.begin(), sol.end(), std::greater_equal<int>()) == sol.end());
  }
}

TEST(ACO, ConfigValidation) {
  ACOConfig cfg;
  cfg.evaporation_rate = 1;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.alpha_exp = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(ACO, FindsHeaviestGenes) {
  std::vector<double> w(15);
  for (int i = 0; i < 15; ++i) w[static_cast<std::size_t>(i)] = ((i * 7) % 15) / 45.0;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ACOConfig cfg;
    cfg.seed = seed;
    const SolverReport r = run_aco(15, 3, Eigen::VectorXd::Constant(15, 1.0 / 15), weighted(w), cfg);
    hits += std::abs(r.best_fitness.value - (14 + 13 + 12) / 45.0) < 1e-12;
  }
  EXPECT_GE(hits, 12);
}

TEST(ACO, Deterministic) {
  std::vector<double> w{0.3, 0.1, 0.4, 0.1, 0.5, 0.9, 0.2, 0.6, 0.5, 0.3, 0.5, 0.8};
  ACOConfig cfg;
  cfg.seed = 99;
  const Eigen::VectorXd eta = Eigen::VectorXd::Constant(12, 1.0 / 12);
  const SolverReport a = run_aco(12, 4, eta, weighted(w), cfg);
  const SolverReport b = run_aco(12, 4, eta, weighted(w), cfg);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.trace, b.trace);
}
