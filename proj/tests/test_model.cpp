#include <gtest/gtest.h>

#include <cmath>

#include "fqmbl/model.hpp"
#include "fqmbl/queueing.hpp"
#include "fqmbl/tri_fuzzy.hpp"
#include "reference.hpp"

using namespace fqmbl;

namespace {

Instance toy(int n, int m) {
  Instance inst;
  inst.n = n;
  inst.m_servers = m;
  inst.distance = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inst.distance(i, j) = std::abs(i - j) * 3.0;
  for (int i = 0; i < n; ++i) {
    inst.demand.push_back({5.0 + i, 10.0 + i, 15.0 + i});
    inst.service.push_back({60.0 + 2 * i, 80.0 + 2 * i, 100.0 + 2 * i});
  }
  return inst;
}

}  // namespace

TEST(TriFuzzy, AddSubMul) {
  const TriFuzzyd a{1, 2, 3}, b{4, 5, 6};
  EXPECT_EQ(tri_combine(a, b, FuzzyOp::add), (TriFuzzyd{5, 7, 9}));
  EXPECT_EQ(tri_combine(a, b, FuzzyOp::mul), (TriFuzzyd{4, 10, 18}));
  EXPECT_EQ(tri_combine(a, b, FuzzyOp::sub), (TriFuzzyd{-3, -3, -3}));
  EXPECT_TRUE(tri_combine(TriFuzzyd{1, 5, 6}, TriFuzzyd{0, 4, 1}, FuzzyOp::sub).ordered());
}

TEST(TriFuzzy, DivTable1Node1) {
  const TriFuzzyd r = tri_combine(TriFuzzyd{60, 110, 160}, TriFuzzyd{189, 239, 289}, FuzzyOp::div);
  EXPECT_NEAR(r.lo, 0.31746, 1e-5);
  EXPECT_NEAR(r.mid, 0.46025, 1e-5);
  EXPECT_NEAR(r.hi, 0.55363, 1e-5);
}

TEST(TriFuzzy, DivByZeroNamesComponent) {
  try {
    tri_combine(TriFuzzyd{1, 2, 3}, TriFuzzyd{1, 0, 2}, FuzzyOp::div);
    FAIL();
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("mid"), std::string::npos);
  }
}

TEST(TriFuzzy, Scale) {
  EXPECT_EQ(tri_scale(TriFuzzyd{1, 2, 3}, 0.0), (TriFuzzyd{0, 0, 0}));
  EXPECT_EQ(tri_scale(TriFuzzyd{1, 2, 3}, 1.0), (TriFuzzyd{1, 2, 3}));
  EXPECT_EQ(tri_scale(TriFuzzyd{60, 110, 160}, 0.5), (TriFuzzyd{30, 55, 80}));
  EXPECT_THROW(tri_scale(TriFuzzyd{1, 2, 3}, -1.0), std::domain_error);
}

TEST(TriFuzzy, FloatScalar) {
  const TriFuzzy<float> a{1.f, 2.f, 3.f};
  EXPECT_FLOAT_EQ((a + a).hi, 6.f);
}

TEST(Logit, HandValues) {
  Eigen::MatrixXd d(1, 2);
  d << 2, 4;
  const std::vector<int> open{0, 1};
  const Eigen::MatrixXd p = logit_allocation(d, open, 0.5);
  EXPECT_NEAR(p(0, 0), 0.7311, 1e-4);
  EXPECT_NEAR(p(0, 1), 0.2689, 1e-4);
}

TEST(Logit, SingleAndEquidistant) {
  const Instance inst = toy(5, 2);
  const std::vector<int> one{3};
  const Eigen::MatrixXd p = logit_allocation(inst, one);
  for (int i = 0; i < 5; ++i) {
    EXPECT_DOUBLE_EQ(p(i, 3), 1.0);
    EXPECT_DOUBLE_EQ(p.row(i).sum(), 1.0);
  }
  const std::vector<int> pair{1, 3};
  EXPECT_NEAR(logit_allocation(inst, pair)(2, 1), 0.5, 1e-12);
  EXPECT_THROW(logit_allocation(inst, std::vector<int>{}), std::domain_error);
}

TEST(Logit, ExtremeDistancesStayFinite) {
  Eigen::MatrixXd d(1, 2);
  d << 5000, 5010;
  const Eigen::MatrixXd p = logit_allocation(d, std::vector<int>{0, 1}, 0.5);
  EXPECT_TRUE(std::isfinite(p(0, 0)));
  EXPECT_NEAR(p.row(0).sum(), 1.0, 1e-12);
}

TEST(Aggregate, SymmetricSplit) {
  Instance inst = toy(3, 1);
  inst.demand = {{1, 2, 3}, {1, 2, 3}, {0, 0, 0}};
  Eigen::MatrixXd alloc = Eigen::MatrixXd::Zero(3, 3);
  alloc(0, 2) = alloc(1, 2) = 0.5;
  alloc(0, 1) = alloc(1, 1) = 0.5;
  alloc(2, 2) = 1;
  const auto agg = aggregate_demand(inst, alloc, std::vector<int>{1, 2});
  EXPECT_EQ(agg[1], (TriFuzzyd{1, 2, 3}));
}

TEST(Aggregate, SingleFacilityIsFuzzySum) {
  const Instance inst = toy(4, 1);
  const std::vector<int> open{2};
  const auto agg = aggregate_demand(inst, logit_allocation(inst, open), open);
  TriFuzzyd sum{0, 0, 0};
  for (const auto& d : inst.demand) sum = sum + d;
  EXPECT_NEAR(agg[0].lo, sum.lo, 1e-12);
  EXPECT_NEAR(agg[0].mid, sum.mid, 1e-12);
  EXPECT_NEAR(agg[0].hi, sum.hi, 1e-12);
}

TEST(Mm1, HandValues) {
  auto a = mm1_metrics(50.0, 100.0);
  ASSERT_TRUE(a);
  EXPECT_DOUBLE_EQ(a->idle_prob, 0.5);
  EXPECT_DOUBLE_EQ(a->queue_length, 0.5);
  auto b = mm1_metrics(80.0, 100.0);
  EXPECT_NEAR(b->idle_prob, 0.2, 1e-15);
  EXPECT_NEAR(b->queue_length, 3.2, 1e-12);
  auto c = mm1_metrics(0.0, 100.0);
  EXPECT_EQ(c->idle_prob, 1.0);
  EXPECT_EQ(c->queue_length, 0.0);
  EXPECT_FALSE(mm1_metrics(100.0, 100.0));
  EXPECT_FALSE(mm1_metrics(120.0, 100.0));
  EXPECT_THROW(mm1_metrics(1.0, 0.0), std::domain_error);
}

TEST(Join, Ramp) {
  EXPECT_EQ(join_probability(0.0, 25.0), 1.0);
  EXPECT_EQ(join_probability(25.0, 25.0), 0.0);
  EXPECT_DOUBLE_EQ(join_probability(10.0, 25.0), 0.6);
  EXPECT_EQ(join_probability(40.0, 25.0), 0.0);
}

TEST(Objective, ZeroDemand) {
  Instance inst = toy(4, 2);
  for (auto& d : inst.demand) d = {0, 0, 0};
  EXPECT_EQ(*crisp_objective_slice(inst, std::vector<int>{0, 3}, Slice::mid), 0.0);
}

TEST(Objective, FullJoinIsCapturedDemand) {
  Instance inst = toy(4, 2);
  inst.mql = 1e12;
  const std::vector<int> open{0, 3};
  double captured = 0;
  for (const auto& d : inst.demand) captured += d.mid;
  EXPECT_NEAR(*crisp_objective_slice(inst, open, Slice::mid), captured, 1e-9);
}

TEST(Objective, ToyMatchesReference) {
  const Instance inst = toy(4, 2);
  ref::for_each_subset(4, 2, [&](const std::vector<int>& open) {
    for (int s = 0; s < 3; ++s) {
      const auto lib = crisp_objective_slice(inst, open, static_cast<Slice>(s));
      const auto want = ref::objective(inst, open, s);
      ASSERT_EQ(lib.has_value(), want.has_value());
      if (lib) EXPECT_NEAR(*lib, *want, 1e-9 * std::max(1.0, *want));
    }
  });
}

TEST(Objective, UnstableIsNullopt) {
  Instance inst = toy(4, 1);
  for (auto& d : inst.demand) d = {50, 60, 70};
  EXPECT_FALSE(crisp_objective_slice(inst, std::vector<int>{0}, Slice::hi));
}

TEST(Objective, WeightsApplied) {
  Instance inst = toy(4, 2);
  const std::vector<int> open{1, 2};
  const double base = *crisp_objective_slice(inst, open, Slice::mid);
  inst.benefit_weight = Eigen::MatrixXd::Constant(4, 4, 2.0);
  EXPECT_NEAR(*crisp_objective_slice(inst, open, Slice::mid), 2 * base, 1e-9);
}

TEST(Capacity, ExcessFive) {
  Instance inst;
  inst.n = 2;
  inst.m_servers = 1;
  inst.distance = Eigen::MatrixXd::Zero(2, 2);
  inst.distance(0, 1) = inst.distance(1, 0) = 1;
  inst.demand = {{90, 90, 90}, {0, 0, 0}};
  inst.service = {{100, 100, 100}, {100, 100, 100}};
  inst.idle_min = {0.15, 0.15, 0.15};
  const CapacityCheck c = capacity_feasible_slice(inst, std::vector<int>{0}, Slice::mid);
  ASSERT_FALSE(c.feasible);
  ASSERT_EQ(c.violations.size(), 1u);
  EXPECT_EQ(c.violations[0].node, 0);
  EXPECT_NEAR(c.violations[0].excess, 5.0, 1e-12);

  inst.demand[0] = {85, 85, 85};
  EXPECT_TRUE(capacity_feasible_slice(inst, std::vector<int>{0}, Slice::mid).feasible);
  inst.demand[0] = {0, 0, 0};
  EXPECT_TRUE(capacity_feasible_slice(inst, std::vector<int>{0}, Slice::mid).feasible);
}

TEST(Solution, Validation) {
  const Instance inst = toy(5, 2);
  EXPECT_EQ(Solution(inst, {3, 1}).to_string(), "2;4");
  EXPECT_THROW(Solution(inst, {1, 1}), std::invalid_argument);
  EXPECT_THROW(Solution(inst, {1}), std::invalid_argument);
  EXPECT_THROW(Solution(inst, {1, 5}), std::invalid_argument);
  EXPECT_THROW(Solution(inst, {-1, 2}), std::invalid_argument);
}

TEST(Instance, ValidateRejects) {
  Instance inst = toy(4, 2);
  EXPECT_NO_THROW(validate(inst));
  Instance bad = inst;
  bad.distance(0, 1) = 7;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  bad = inst;
  bad.demand[2] = {5, 4, 6};
  EXPECT_THROW(validate(bad), std::invalid_argument);
  bad = inst;
  bad.m_servers = 4;
  EXPECT_THROW(validate(bad), std::invalid_argument);
  bad = inst;
  bad.gamma = 1.5;
  EXPECT_THROW(validate(bad), std::invalid_argument);
}
