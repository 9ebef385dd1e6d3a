#ifndef FQMBL_FITNESS_HPP
#define FQMBL_FITNESS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fqmbl {

enum class Sense { maximize, minimize };

/// Outcome of evaluating one location set. `value` is only meaningful for
/// ranking among feasible sets; infeasible sets rank by `violation`.
struct Fitness {
  double value = 0;
  bool feasible = false;
  double violation = 0;

  friend bool operator==(const Fitness&, const Fitness&) = default;
};

/// Total order used by every solver: feasible beats infeasible, feasible
/// sets compare by value in the given sense, infeasible ones by violation.
inline bool better(const Fitness& a, const Fitness& b, Sense sense) {
  if (a.feasible != b.feasible) return a.feasible;
  if (!a.feasible) return a.violation < b.violation;
  return sense == Sense::maximize ? a.value > b.value : a.value < b.value;
}

/// The objective a solver optimizes: any nonempty set of open nodes
/// (sorted ascending) maps to a Fitness.
struct FitnessFunction {
  Sense sense = Sense::maximize;
  std::function<Fitness(std::span<const int>)> eval;
  std::string label;

  Fitness operator()(std::span<const int> open) const { return eval(open); }
};

enum class Termination { stagnation, iteration_cap, exhaustive };

inline const char* termination_name(Termination t) {
  switch (t) {
    case Termination::stagnation: return "stagnation";
    case Termination::iteration_cap: return "iteration_cap";
    case Termination::exhaustive: return "exhaustive";
  }
  return "?";
}

struct SolverReport {
  std::string algorithm;
  std::string objective_label;
  std::vector<int> best;  // 0-based, ascending
  Fitness best_fitness;
  std::vector<double> trace;  // best value after each iteration
  long long iterations = 0;
  long long evaluations = 0;
  Termination termination = Termination::stagnation;
  double elapsed_ms = 0;
  std::uint64_t seed = 0;
};

/// Stagnation window shared by both metaheuristics: floor(n * sqrt(m)).
int stagnation_limit(int n, int m);

/// Hard iteration cap: stagnation_limit squared.
long long iteration_cap(int n, int m);

/// C(n, k), saturating at LLONG_MAX.
long long binomial(int n, int k);

/// Independent seed for the k-th sub-run derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k);

}  // namespace fqmbl

#endif  // FQMBL_FITNESS_HPP
