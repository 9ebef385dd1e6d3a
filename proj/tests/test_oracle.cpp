#include <gtest/gtest.h>

#include <cstdlib>

#include "fqmbl/instances.hpp"
#include "fqmbl/oracle.hpp"
#include "reference.hpp"

using namespace fqmbl;

namespace {

FitnessFunction weighted(std::vector<double> w) {
  FitnessFunction f;
  f.eval = [w = std::move(w)](std::span<const int> open) {
    double s = 0;
    for (int g : open) s += w[static_cast<std::size_t>(g)];
    return Fitness{s, true, 0};
  };
  return f;
}

}  // namespace

TEST(Enumerate, CountsAndOrder) {
  const EnumerationResult r = enumerate_optimum(6, 2, weighted({1, 1, 1, 1, 1, 1}), kDefaultEnumerationBudget, true);
  EXPECT_EQ(r.evaluated_count, 15);
  ASSERT_EQ(r.table.size(), 15u);
  EXPECT_EQ(r.table.front().first, (std::vector<int>{0, 1}));
  EXPECT_EQ(r.table.back().first, (std::vector<int>{4, 5}));
  EXPECT_EQ(r.best, (std::vector<int>{0, 1}));
}

TEST(Enumerate, FindsMax) {
  const EnumerationResult r = enumerate_optimum(7, 3, weighted({1, 8, 2, 9, 3, 7, 0}));
  EXPECT_EQ(r.best, (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(r.best_fitness.value, 24);
  EXPECT_EQ(r.evaluated_count, 35);
}

TEST(Enumerate, BudgetExceeded) {
  try {
    enumerate_optimum(30, 10, weighted(std::vector<double>(30, 1)), 1000);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.subsets(), 30045015);
  }
}

TEST(Enumerate, BudgetFromEnvironment) {
  ::setenv("FQMBL_ENUM_BUDGET", "1234", 1);
  EXPECT_EQ(enumeration_budget_from_env(), 1234);
  ::setenv("FQMBL_ENUM_BUDGET", "garbage", 1);
  EXPECT_EQ(enumeration_budget_from_env(), kDefaultEnumerationBudget);
  ::unsetenv("FQMBL_ENUM_BUDGET");
  EXPECT_EQ(enumeration_budget_from_env(), kDefaultEnumerationBudget);
}

TEST(ExactBounds, InfeasibleInstanceThrows) {
  GeneratorParams p;
  p.n = 6;
  p.m_servers = 1;
  p.demand_lo_range = {200, 220};
  EXPECT_THROW(exact_bounds(generate_instance(p)), InfeasibleInstance);
}

TEST(Mm1Sim, ReferencePoints) {
  for (double lambda : {50.0, 80.0}) {
    const QueueSimulation s = mm1_simulate(lambda, 100, 1'000'000, 3);
    EXPECT_NEAR(s.idle_prob / ref::mm1_idle(lambda, 100) - 1, 0, 0.02);
    EXPECT_NEAR(s.queue_length / ref::mm1_waiting(lambda, 100) - 1, 0, 0.02);
    EXPECT_EQ(s.events, 1'000'000);
    EXPECT_GT(s.queue_length_se, 0);
  }
}

TEST(Mm1Sim, PlainEstimatorAgrees) {
  const QueueSimulation s = mm1_simulate(50, 100, 1'000'000, 2, Mm1Estimator::plain);
  EXPECT_NEAR(s.idle_prob, 0.5, 0.01);
  EXPECT_NEAR(s.queue_length, 0.5, 0.03);
  EXPECT_NEAR(s.simulated_time, 1'000'000 / 100.0, 200);
}

TEST(Mm1Sim, Preconditions) {
  EXPECT_THROW(mm1_simulate(50, 100, 100, 1), std::domain_error);
  EXPECT_THROW(mm1_simulate(100, 100, 100'000, 1), std::domain_error);
  EXPECT_NO_THROW(mm1_simulate_unchecked(50, 100, 100, 1));
}

TEST(Mm1Sim, DoublingBudgetShrinksErrorOnAverage) {
  for (auto est : {Mm1Estimator::plain, Mm1Estimator::variance_reduced}) {
    double small = 0, large = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      small += std::abs(mm1_simulate(70, 100, 20'000, seed, est).idle_prob - 0.3);
      large += std::abs(mm1_simulate(70, 100, 320'000, seed, est).idle_prob - 0.3);
    }
    EXPECT_LT(large, small);
  }
}

TEST(NetworkSim, MatchesAnalyticBenefit) {
  GeneratorParams p;
  p.n = 6;
  p.m_servers = 2;
  p.demand_lo_range = {10, 30};
  p.demand_offsets = {5, 10};
  p.seed = 4;
  const Instance inst = generate_instance(p);
  const std::vector<int> open{1, 4};
  const auto analytic = ref::objective(inst, open, 1);
  ASSERT_TRUE(analytic);
  const NetworkSimulation s = simulate_network(inst, open, Slice::mid, 400'000, 8);
  EXPECT_NEAR(s.benefit_rate / *analytic - 1, 0, 0.02);
}
