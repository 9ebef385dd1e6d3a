#ifndef FQMBL_ACO_HPP
#define FQMBL_ACO_HPP

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fqmbl/fitness.hpp"
#include "fqmbl/instance.hpp"

namespace fqmbl {

struct ACOConfig {
  double evaporation_rate = 0.97;  // fraction of trail kept per iteration
  double max_pheromone = 200.0;    // deposit scale and trail cap
  int population_coefficient = 2;
  double alpha_exp = 0.75;  // pheromone exponent
  double beta_exp = 0.75;   // desirability exponent
  std::uint64_t seed = 1;

  void validate() const;
};

inline constexpr double kMinPheromone = 1e-6;
inline constexpr double kInitialPheromone = 1.0;

/// Trail intensity per node, always within [kMinPheromone, max_pheromone].
struct PheromoneState {
  Eigen::VectorXd tau;

  static PheromoneState uniform(int n, double value = kInitialPheromone) {
    return {Eigen::VectorXd::Constant(n, value)};
  }
};

/// Static desirability: service rate (mid) over total distance to all nodes,
/// normalized to sum to 1.
Eigen::VectorXd heuristic_index(const Instance& inst);

/// Unnormalized desirability before the sum-to-one scaling.
Eigen::VectorXd heuristic_index_raw(const Instance& inst);

/// Selection probabilities over all nodes; chosen nodes get 0.
Eigen::VectorXd selection_probabilities(const PheromoneState& state, const Eigen::VectorXd& eta,
                                        std::span<const int> chosen, const ACOConfig& config);

int select_next(const PheromoneState& state, const Eigen::VectorXd& eta, std::span<const int> chosen,
                const ACOConfig& config, std::mt19937_64& rng);

/// m successive draws without replacement; sorted ascending.
std::vector<int> construct_solution(const PheromoneState& state, const Eigen::VectorXd& eta, int m,
                                    const ACOConfig& config, std::mt19937_64& rng);

using Ant = std::pair<std::vector<int>, Fitness>;

/// Evaporation then deposit on every node an ant opened; theta * F when
/// maximizing, theta / F when minimizing. Infeasible or non-positive ants
/// deposit nothing.
PheromoneState pheromone_update(const PheromoneState& state, std::span<const Ant> colony, const ACOConfig& config,
                                Sense sense);

/// coefficient * ceil(n / m)
int ant_count(int n, int m, int coefficient);

SolverReport run_aco(const Instance& inst, const FitnessFunction& fitness, const ACOConfig& config);
SolverReport run_aco(int n, int m, const Eigen::VectorXd& eta, const FitnessFunction& fitness,
                     const ACOConfig& config);

}  // namespace fqmbl

#endif  // FQMBL_ACO_HPP
