#include "fqmbl/protocol.hpp"

#include <chrono>
#include <stdexcept>

namespace fqmbl {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::ga: return "ga";
    case Algorithm::aco: return "aco";
    case Algorithm::brute: return "brute";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "ga") return Algorithm::ga;
  if (name == "aco") return Algorithm::aco;
  if (name == "brute") return Algorithm::brute;
  throw std::invalid_argument("unknown algorithm: " + name);
}

SolverHandle make_solver(const Instance& inst, Algorithm algorithm, const GAConfig& ga, const ACOConfig& aco,
                         long long budget) {
  switch (algorithm) {
    case Algorithm::ga:
      return [&inst, ga](const FitnessFunction& f, std::uint64_t seed) {
        GAConfig c = ga;
        c.seed = seed;
        return run_ga(inst, f, c);
      };
    case Algorithm::aco: {
      const Eigen::VectorXd eta = heuristic_index(inst);
      return [&inst, aco, eta](const FitnessFunction& f, std::uint64_t seed) {
        ACOConfig c = aco;
        c.seed = seed;
        return run_aco(inst.n, inst.m_servers, eta, f, c);
      };
    }
    case Algorithm::brute: return enumeration_solver(inst, budget);
  }
  throw std::invalid_argument("make_solver: unknown algorithm");
}

std::vector<std::uint64_t> bound_seeds(std::uint64_t seed) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 0; k < 6; ++k) out.push_back(derive_seed(seed, k));
  return out;
}

ProtocolResult solve_protocol(const Instance& inst, const ProtocolOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  ProtocolResult out;
  const SolverHandle solver = make_solver(inst, options.algorithm, options.ga, options.aco, options.budget);

  if (options.context) {
    out.context = *options.context;
    out.notes.push_back("bounds replayed from a saved context");
  } else if (options.algorithm == Algorithm::brute || options.exact_bounds) {
    const long long subsets = binomial(inst.n, inst.m_servers);
    if (subsets <= options.budget) {
      try {
        out.context = exact_bounds(inst, options.budget);
      } catch (const InfeasibleInstance&) {
        // Every set is infeasible; memberships are moot and the penalty ranks sets.
        out.context.provenance = BoundProvenance::oracle_exact;
        for (auto& b : out.context.bounds) b = {0.0, 0.0, false};
        out.notes.push_back("no feasible location set exists");
      }
    } else if (options.algorithm == Algorithm::brute) {
      throw BudgetExceeded(subsets, options.budget);
    } else {
      out.notes.push_back("exact bounds skipped: " + std::to_string(subsets) + " subsets exceed the budget");
    }
  }
  if (!options.context && out.context.provenance != BoundProvenance::oracle_exact) {
    const auto seeds = bound_seeds(options.seed);
    BoundEstimate est = estimate_bounds(inst, solver, seeds);
    out.context = est.context;
    out.bound_runs = std::move(est.runs);
    for (int i = 0; i < 3; ++i)
      if (!out.context.bounds[static_cast<std::size_t>(i)].found)
        out.notes.push_back("no feasible solution found while bounding z" + std::to_string(i + 1));
  }

  out.final_run = solver(maximin_fitness(inst, out.context), options.seed);
  out.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace fqmbl
