#ifndef FQMBL_BENCH_HPP
#define FQMBL_BENCH_HPP

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fqmbl/aco.hpp"
#include "fqmbl/fuzzy_eval.hpp"
#include "fqmbl/ga.hpp"
#include "fqmbl/instance.hpp"
#include "fqmbl/oracle.hpp"

namespace fqmbl {

struct BenchInstance {
  std::string id;
  Instance instance;
};

struct BenchRow {
  std::string algorithm;
  std::string instance;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  double objective = 0;
  double runtime_ms = 0;
  std::string facilities;
  std::string termination;  // "error" when the run failed
  std::string bounds_id;
  std::string error;
};

inline constexpr const char* kBenchCsvHeader =
    "algorithm,instance,n,m,seed,objective,runtime_ms,facilities,termination,bounds_id";

struct BenchOptions {
  int replications = 5;
  std::uint64_t base_seed = 1;
  bool exact_bounds = false;
  long long budget = kDefaultEnumerationBudget;
  GAConfig ga;
  ACOConfig aco;
};

/// Paired GA/ACO runs of the full protocol over seeds base_seed .. base_seed + replications - 1.
/// Rows ordered by (instance, algorithm, seed).
std::vector<BenchRow> run_bench(std::span<const BenchInstance> instances, const BenchOptions& options);

struct BenchSummary {
  std::string instance;
  int n = 0;
  int m = 0;
  double ga_objective = 0;
  double aco_objective = 0;
  double ga_runtime_ms = 0;
  double aco_runtime_ms = 0;
  int ga_runs = 0;
  int aco_runs = 0;
  /// (GA - ACO) / GA * 100
  double gap_percent() const;
};

std::vector<BenchSummary> summarize(std::span<const BenchRow> rows);

/// `runtime_ms` is written as 0 when include_runtime is false.
void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out, bool include_runtime = true);
void write_summary(std::span<const BenchSummary> summary, std::ostream& out);
/// Whitespace-separated columns "n ga aco" for external plotting.
void write_plot_runtime(std::span<const BenchSummary> summary, std::ostream& out);
void write_plot_objective(std::span<const BenchSummary> summary, std::ostream& out);

struct TuneGrid {
  std::vector<double> evaporation_rate{0.95, 0.99};
  std::vector<double> max_pheromone{150, 250};
  std::vector<int> population_coefficient{1, 3};
  std::vector<double> alpha_exp{0.5, 1};
  std::vector<double> beta_exp{0.5, 1};

  std::size_t cells() const;
  /// Cells in lexicographic order of (evaporation, pheromone, coefficient, alpha, beta).
  std::vector<ACOConfig> expand() const;
};

struct TuneRow {
  int cell = 0;
  ACOConfig config;
  int runs = 0;
  double mean_objective = 0;
  double mean_runtime_ms = 0;
  std::string error;
};

inline constexpr const char* kTuneCsvHeader =
    "cell,evaporation_rate,max_pheromone,population_coefficient,alpha,beta,runs,mean_objective,mean_runtime_ms";

/// One maximin ACO run per cell per seed, all under the same bound context.
std::vector<TuneRow> run_tune(const Instance& inst, const TuneGrid& grid, std::span<const std::uint64_t> seeds,
                              const MaximinContext& context);

void write_tune_csv(std::span<const TuneRow> rows, std::ostream& out, bool include_runtime = true);

struct ValidationOptions {
  long long events = 1'000'000;
  std::uint64_t seed = 1;
  double tolerance = 0.02;
  double mu = 100;
  std::vector<double> rho{0.3, 0.5, 0.8};
  bool network = true;
};

/// Occupancy at which `tolerance` applies unrelaxed.
inline constexpr double kReferenceRho = 0.8;

/// Relative standard error of M/M/1 time averages grows like 1 / (1 - rho);
/// the tolerance is widened by that factor relative to kReferenceRho.
double relaxed_tolerance(double tolerance, double rho);

struct ValidationLine {
  std::string quantity;  // "P0", "Lq" or "benefit"
  double rho = 0;
  double analytic = 0;
  double simulated = 0;
  double standard_error = 0;
  double relative_error = 0;
  double tolerance = 0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationLine> lines;
  std::vector<std::string> warnings;
  bool enforceable = true;
  bool pass() const;
};

ValidationReport run_validation(const ValidationOptions& options);

/// Small fixed network used by the whole-network simulation check.
Instance validation_network();

std::string format_number(double v, int precision = 10);

}  // namespace fqmbl

#endif  // FQMBL_BENCH_HPP
