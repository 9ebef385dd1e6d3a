#ifndef FQMBL_PROTOCOL_HPP
#define FQMBL_PROTOCOL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fqmbl/aco.hpp"
#include "fqmbl/fuzzy_eval.hpp"
#include "fqmbl/ga.hpp"
#include "fqmbl/instance.hpp"
#include "fqmbl/oracle.hpp"

namespace fqmbl {

enum class Algorithm { ga, aco, brute };

const char* algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

struct ProtocolOptions {
  Algorithm algorithm = Algorithm::ga;
  std::uint64_t seed = 1;
  bool exact_bounds = false;  // use enumeration for the bounds when the budget allows
  long long budget = kDefaultEnumerationBudget;
  GAConfig ga;
  ACOConfig aco;
  std::optional<MaximinContext> context;  // replay: skip the bound runs
};

struct ProtocolResult {
  MaximinContext context;
  std::vector<SolverReport> bound_runs;  // empty when bounds were exact or replayed
  SolverReport final_run;
  double total_ms = 0;
  std::vector<std::string> notes;
};

/// Solver handle for one algorithm; `seed` in the handle call overrides the config seed.
SolverHandle make_solver(const Instance& inst, Algorithm algorithm, const GAConfig& ga, const ACOConfig& aco,
                         long long budget);

/// Seeds of the six bound runs derived from the base seed.
std::vector<std::uint64_t> bound_seeds(std::uint64_t seed);

/// Six bound runs (or exact bounds), then the maximin run with the base seed.
/// Brute force always uses exact bounds and throws BudgetExceeded past the budget.
ProtocolResult solve_protocol(const Instance& inst, const ProtocolOptions& options);

}  // namespace fqmbl

#endif  // FQMBL_PROTOCOL_HPP
