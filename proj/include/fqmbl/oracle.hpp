#ifndef FQMBL_ORACLE_HPP
#define FQMBL_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fqmbl/fitness.hpp"
#include "fqmbl/fuzzy_eval.hpp"
#include "fqmbl/instance.hpp"
#include "fqmbl/tri_fuzzy.hpp"

namespace fqmbl {

inline constexpr long long kDefaultEnumerationBudget = 1'000'000;

/// Budget from FQMBL_ENUM_BUDGET when set to a positive integer, otherwise the default.
long long enumeration_budget_from_env();

class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(long long subsets, long long budget);
  long long subsets() const { return subsets_; }

 private:
  long long subsets_;
};

class InfeasibleInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationResult {
  std::vector<int> best;
  Fitness best_fitness;
  long long evaluated_count = 0;
  std::vector<std::pair<std::vector<int>, Fitness>> table;  // filled on request
};

/// Evaluates every m-subset of 0..n-1 in lexicographic order; ties keep the
/// lexicographically smallest set.
EnumerationResult enumerate_optimum(int n, int m, const FitnessFunction& fitness,
                                    long long budget = kDefaultEnumerationBudget, bool keep_table = false);
EnumerationResult enumerate_optimum(const Instance& inst, const FitnessFunction& fitness,
                                    long long budget = kDefaultEnumerationBudget, bool keep_table = false);

/// Extremes of z1, z2, z3 over all feasible subsets. Throws InfeasibleInstance
/// when no subset is feasible.
MaximinContext exact_bounds(const Instance& inst, long long budget = kDefaultEnumerationBudget);

/// Solver handle running enumerate_optimum; reports termination "exhaustive".
SolverHandle enumeration_solver(const Instance& inst, long long budget = kDefaultEnumerationBudget);

struct QueueSimulation {
  double idle_prob = 0;
  double queue_length = 0;
  double idle_prob_se = 0;
  double queue_length_se = 0;
  double simulated_time = 0;
  long long events = 0;
};

inline constexpr long long kMinSimulationEvents = 10'000;

enum class Mm1Estimator {
  /// Exponential clocks; time averages over sampled holding times.
  plain,
  /// Jump chain with expected holding times, plus regression on zero-mean
  /// martingale controls built from the arrival/departure choices.
  variance_reduced,
};

/// Discrete-event M/M/1 run starting empty; an event is one arrival or one
/// departure. Estimates the long-run empty-system fraction and waiting-line
/// length (in-service customer excluded); standard errors from batch means.
QueueSimulation mm1_simulate(double lambda, double mu, long long event_budget, std::uint64_t seed,
                             Mm1Estimator estimator = Mm1Estimator::variance_reduced);

/// As mm1_simulate without the minimum-budget precondition.
QueueSimulation mm1_simulate_unchecked(double lambda, double mu, long long event_budget, std::uint64_t seed,
                                       Mm1Estimator estimator = Mm1Estimator::variance_reduced);

struct NetworkSimulation {
  double benefit_rate = 0;
  double benefit_rate_se = 0;
  double simulated_time = 0;
  long long events = 0;
};

/// Simulates the located network at one slice: Poisson demand per node routed
/// by the logit shares to single-server exponential facilities. Each arrival
/// credits w_ij when the server is idle and w_ij times the facility's joining
/// probability when busy. The estimate targets crisp_objective_slice.
NetworkSimulation simulate_network(const Instance& inst, std::span<const int> open, Slice slice,
                                   long long event_budget, std::uint64_t seed);

}  // namespace fqmbl

#endif  // FQMBL_ORACLE_HPP
