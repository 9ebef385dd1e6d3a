#include "fqmbl/aco.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace fqmbl {

void ACOConfig::validate() const {
  if (!(evaporation_rate > 0 && evaporation_rate < 1))
    throw std::invalid_argument("ACOConfig: evaporation_rate must lie in (0, 1)");
  if (!(max_pheromone > kMinPheromone)) throw std::invalid_argument("ACOConfig: max_pheromone too small");
  if (population_coefficient < 1) throw std::invalid_argument("ACOConfig: population_coefficient must be >= 1");
  if (!(alpha_exp > 0) || !(beta_exp > 0)) throw std::invalid_argument("ACOConfig: exponents must be positive");
}

Eigen::VectorXd heuristic_index_raw(const Instance& inst) {
  Eigen::VectorXd eta(inst.n);
  const Eigen::VectorXd totals = inst.distance.colwise().sum().transpose();
  for (int j = 0; j < inst.n; ++j) eta(j) = inst.service[static_cast<std::size_t>(j)].mid / totals(j);
  return eta;
}

Eigen::VectorXd heuristic_index(const Instance& inst) {
  const Eigen::VectorXd raw = heuristic_index_raw(inst);
  return raw / raw.sum();
}

namespace {

Eigen::VectorXd attraction(const PheromoneState& state, const Eigen::VectorXd& eta, const ACOConfig& config) {
  return state.tau.array().pow(config.alpha_exp) * eta.array().pow(config.beta_exp);
}

// Roulette over unchosen nodes with precomputed weights; same draw sequence as select_next.
std::vector<int> construct_weighted(const Eigen::VectorXd& weight, int m, std::mt19937_64& rng) {
  const auto n = static_cast<int>(weight.size());
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(m));
  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (chosen.size() < static_cast<std::size_t>(m)) {
    double total = 0;
    for (int j = 0; j < n; ++j)
      if (!taken[static_cast<std::size_t>(j)]) total += weight(j);
    const bool uniform = !(total > 0) || !std::isfinite(total);
    const double free_count = static_cast<double>(n) - static_cast<double>(chosen.size());
    const double u = unit(rng);
    double acc = 0;
    int last = -1;
    for (int j = 0; j < n; ++j) {
      if (taken[static_cast<std::size_t>(j)]) continue;
      const double p = uniform ? 1.0 / free_count : weight(j) / total;
      if (p <= 0) continue;
      acc += p;
      last = j;
      if (u < acc) break;
    }
    taken[static_cast<std::size_t>(last)] = 1;
    chosen.push_back(last);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

Eigen::VectorXd selection_probabilities(const PheromoneState& state, const Eigen::VectorXd& eta,
                                        std::span<const int> chosen, const ACOConfig& config) {
  const Eigen::Index n = state.tau.size();
  Eigen::VectorXd w = attraction(state, eta, config);
  Eigen::VectorXd avail = Eigen::VectorXd::Ones(n);
  for (int j : chosen) avail(j) = 0;
  w = w.cwiseProduct(avail);
  const double total = w.sum();
  if (!(total > 0) || !std::isfinite(total)) return avail / avail.sum();
  return w / total;
}

int select_next(const PheromoneState& state, const Eigen::VectorXd& eta, std::span<const int> chosen,
                const ACOConfig& config, std::mt19937_64& rng) {
  if (static_cast<Eigen::Index>(chosen.size()) >= state.tau.size())
    throw std::domain_error("select_next: no unchosen node left");
  const Eigen::VectorXd p = selection_probabilities(state, eta, chosen, config);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0;
  int last = -1;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (p(j) <= 0) continue;
    acc += p(j);
    last = static_cast<int>(j);
    if (u < acc) return last;
  }
  return last;
}

std::vector<int> construct_solution(const PheromoneState& state, const Eigen::VectorXd& eta, int m,
                                    const ACOConfig& config, std::mt19937_64& rng) {
  if (m > state.tau.size()) throw std::domain_error("construct_solution: m exceeds node count");
  return construct_weighted(attraction(state, eta, config), m, rng);
}

PheromoneState pheromone_update(const PheromoneState& state, std::span<const Ant> colony, const ACOConfig& config,
                                Sense sense) {
  PheromoneState next{config.evaporation_rate * state.tau};
  for (const auto& [open, fit] : colony) {
    if (!fit.feasible || !std::isfinite(fit.value) || fit.value <= 0) continue;
    const double deposit =
        sense == Sense::maximize ? config.max_pheromone * fit.value : config.max_pheromone / fit.value;
    for (int j : open) next.tau(j) += deposit;
  }
  next.tau = next.tau.cwiseMax(kMinPheromone).cwiseMin(config.max_pheromone);
  return next;
}

int ant_count(int n, int m, int coefficient) {
  if (m < 1 || m >= n) throw std::invalid_argument("ant_count: requires 1 <= m < n");
  return coefficient * ((n + m - 1) / m);
}

SolverReport run_aco(int n, int m, const Eigen::VectorXd& eta, const FitnessFunction& fitness,
                     const ACOConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(config.seed);
  SolverReport report;
  report.algorithm = "aco";
  report.objective_label = fitness.label;
  report.seed = config.seed;

  PheromoneState state = PheromoneState::uniform(n);
  const int ants = ant_count(n, m, config.population_coefficient);
  const int limit = stagnation_limit(n, m);
  const long long cap = iteration_cap(n, m);

  bool have_best = false;
  int stale = 0;
  std::vector<Ant> colony(static_cast<std::size_t>(ants));
  report.termination = Termination::iteration_cap;
  while (report.iterations < cap) {
    const Eigen::VectorXd weight = attraction(state, eta, config);
    for (auto& ant : colony) {
      ant.first = construct_weighted(weight, m, rng);
      ant.second = fitness(ant.first);
      ++report.evaluations;
    }
    state = pheromone_update(state, colony, config, fitness.sense);
    ++report.iterations;

    bool improved = false;
    for (const auto& [open, fit] : colony) {
      if (!have_best || better(fit, report.best_fitness, fitness.sense)) {
        improved = have_best;
        have_best = true;
        report.best = open;
        report.best_fitness = fit;
      }
    }
    stale = improved ? 0 : stale + 1;
    report.trace.push_back(report.best_fitness.value);
    if (stale >= limit) {
      report.termination = Termination::stagnation;
      break;
    }
  }
  report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SolverReport run_aco(const Instance& inst, const FitnessFunction& fitness, const ACOConfig& config) {
  return run_aco(inst.n, inst.m_servers, heuristic_index(inst), fitness, config);
}

}  // namespace fqmbl
