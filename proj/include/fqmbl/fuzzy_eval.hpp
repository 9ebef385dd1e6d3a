#ifndef FQMBL_FUZZY_EVAL_HPP
#define FQMBL_FUZZY_EVAL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqmbl/fitness.hpp"
#include "fqmbl/instance.hpp"
#include "fqmbl/tri_fuzzy.hpp"

namespace fqmbl {

/// z1 = mid - lo (minimized), z2 = mid (maximized), z3 = hi - mid (maximized).
struct SpreadComponents {
  double z1 = 0;
  double z2 = 0;
  double z3 = 0;

  double operator[](int k) const { return k == 0 ? z1 : (k == 1 ? z2 : z3); }
};

SpreadComponents spread_components(const TriFuzzyd& z);

/// Direction in which each spread component is desirable.
inline constexpr std::array<Sense, 3> kSpreadSense{Sense::minimize, Sense::maximize, Sense::maximize};

enum class BoundProvenance { metaheuristic_estimated, oracle_exact };

struct ComponentBounds {
  double min_bound = 0;
  double max_bound = 0;
  bool found = true;  // false when no feasible set was seen for this component

  bool degenerate() const;
};

struct MaximinContext {
  std::array<ComponentBounds, 3> bounds;
  BoundProvenance provenance = BoundProvenance::metaheuristic_estimated;

  /// Stable content id (hex FNV-1a of the canonical bound values).
  std::string id() const;
};

const char* provenance_name(BoundProvenance p);

struct Memberships {
  double mu1 = 0;
  double mu2 = 0;
  double mu3 = 0;
};

Memberships membership_values(const SpreadComponents& c, const MaximinContext& ctx);

inline double maximin_level(double mu1, double mu2, double mu3) { return std::min({mu1, mu2, mu3}); }
inline double maximin_level(const Memberships& m) { return maximin_level(m.mu1, m.mu2, m.mu3); }

/// Credibility threshold on a crisp occupancy center: T(rho <= 1 - beta) >= gamma
/// holds iff rho.mid <= threshold.
double capacity_threshold(const TriFuzzyd& idle_min, double gamma);

struct FuzzyCapacity {
  bool feasible = true;
  double threshold = 0;
  std::vector<double> margins;  // threshold - rho.mid per open facility
  std::vector<TriFuzzyd> occupancy;
};

FuzzyCapacity fuzzy_capacity_feasible(const Instance& inst, std::span<const int> open);
FuzzyCapacity fuzzy_capacity_feasible(const Instance& inst, const Solution& sol);

/// Full fuzzy assessment of one location set.
struct FuzzyAssessment {
  std::optional<TriFuzzyd> objective;  // nullopt if any slice is unstable
  FuzzyCapacity capacity;
  double violation = 0;  // total relative violation, 0 when feasible
  bool feasible() const { return objective.has_value() && capacity.feasible; }
};

FuzzyAssessment assess(const Instance& inst, std::span<const int> open);

/// Sorted (lo, mid, hi) of the three crisp slice objectives; nullopt when unstable.
std::optional<TriFuzzyd> fuzzy_objective(const Instance& inst, std::span<const int> open);
std::optional<TriFuzzyd> fuzzy_objective(const Instance& inst, const Solution& sol);

/// Maximin satisfaction in [0, 1] for feasible sets, -(1 + violation) otherwise.
double evaluate(const Instance& inst, std::span<const int> open, const MaximinContext& ctx);
double evaluate(const Instance& inst, const Solution& sol, const MaximinContext& ctx);

/// Fitness function for the final maximin run.
FitnessFunction maximin_fitness(const Instance& inst, const MaximinContext& ctx);

/// Fitness function for a bound run on spread component k (0..2) in the given sense.
FitnessFunction spread_fitness(const Instance& inst, int component, Sense sense);

/// A solver usable by the bound protocol: optimizes the given fitness with the given seed.
using SolverHandle = std::function<SolverReport(const FitnessFunction&, std::uint64_t seed)>;

struct BoundEstimate {
  MaximinContext context;
  std::vector<SolverReport> runs;  // min z1, max z1, min z2, max z2, min z3, max z3
};

/// Runs the six bound optimizations, one seed each.
BoundEstimate estimate_bounds(const Instance& inst, const SolverHandle& solver,
                              std::span<const std::uint64_t> seeds,
                              BoundProvenance provenance = BoundProvenance::metaheuristic_estimated);

}  // namespace fqmbl

#endif  // FQMBL_FUZZY_EVAL_HPP
