#include "fqmbl/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "fqmbl/instances.hpp"
#include "fqmbl/model.hpp"
#include "fqmbl/protocol.hpp"

namespace fqmbl {

std::string format_number(double v, int precision) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

std::vector<BenchRow> run_bench(std::span<const BenchInstance> instances, const BenchOptions& options) {
  std::vector<BenchRow> rows;
  for (const auto& bi : instances) {
    for (Algorithm algo : {Algorithm::ga, Algorithm::aco}) {
      for (int r = 0; r < options.replications; ++r) {
        BenchRow row;
        row.algorithm = algorithm_name(algo);
        row.instance = bi.id;
        row.n = bi.instance.n;
        row.m = bi.instance.m_servers;
        row.seed = options.base_seed + static_cast<std::uint64_t>(r);
        ProtocolOptions po;
        po.algorithm = algo;
        po.seed = row.seed;
        po.exact_bounds = options.exact_bounds;
        po.budget = options.budget;
        po.ga = options.ga;
        po.aco = options.aco;
        try {
          const ProtocolResult res = solve_protocol(bi.instance, po);
          row.objective = res.final_run.best_fitness.value;
          row.runtime_ms = res.total_ms;
          row.facilities = format_facilities(res.final_run.best);
          row.termination = termination_name(res.final_run.termination);
          row.bounds_id = res.context.id();
        } catch (const std::exception& e) {
          row.objective = std::nan("");
          row.termination = "error";
          row.error = e.what();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

double BenchSummary::gap_percent() const {
  if (ga_objective == 0) return std::nan("");
  return (ga_objective - aco_objective) / ga_objective * 100.0;
}

std::vector<BenchSummary> summarize(std::span<const BenchRow> rows) {
  std::vector<BenchSummary> out;
  std::map<std::string, std::size_t> index;
  for (const auto& row : rows) {
    auto [it, inserted] = index.try_emplace(row.instance, out.size());
    if (inserted) out.push_back({row.instance, row.n, row.m});
    BenchSummary& s = out[it->second];
    if (row.termination == "error") continue;
    if (row.algorithm == "ga") {
      s.ga_objective += row.objective;
      s.ga_runtime_ms += row.runtime_ms;
      ++s.ga_runs;
    } else {
      s.aco_objective += row.objective;
      s.aco_runtime_ms += row.runtime_ms;
      ++s.aco_runs;
    }
  }
  for (auto& s : out) {
    if (s.ga_runs) {
      s.ga_objective /= s.ga_runs;
      s.ga_runtime_ms /= s.ga_runs;
    }
    if (s.aco_runs) {
      s.aco_objective /= s.aco_runs;
      s.aco_runtime_ms /= s.aco_runs;
    }
  }
  return out;
}

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out, bool include_runtime) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.algorithm << ',' << r.instance << ',' << r.n << ',' << r.m << ',' << r.seed << ','
        << format_number(r.objective) << ',' << format_number(include_runtime ? r.runtime_ms : 0.0, 3) << ','
        << r.facilities << ',' << r.termination << ',' << r.bounds_id << '\n';
  }
}

void write_summary(std::span<const BenchSummary> summary, std::ostream& out) {
  out << "instance        n    m   GA objective  ACO objective   GA ms       ACO ms      gap %\n";
  for (const auto& s : summary) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-14s %3d %4d %13.6f %14.6f %11.1f %11.1f %8.2f\n", s.instance.c_str(), s.n, s.m,
                  s.ga_objective, s.aco_objective, s.ga_runtime_ms, s.aco_runtime_ms, s.gap_percent());
    out << buf;
  }
}

void write_plot_runtime(std::span<const BenchSummary> summary, std::ostream& out) {
  out << "# n ga_runtime_ms aco_runtime_ms\n";
  for (const auto& s : summary)
    out << s.n << ' ' << format_number(s.ga_runtime_ms, 3) << ' ' << format_number(s.aco_runtime_ms, 3) << '\n';
}

void write_plot_objective(std::span<const BenchSummary> summary, std::ostream& out) {
  out << "# n ga_objective aco_objective\n";
  for (const auto& s : summary)
    out << s.n << ' ' << format_number(s.ga_objective) << ' ' << format_number(s.aco_objective) << '\n';
}

std::size_t TuneGrid::cells() const {
  return evaporation_rate.size() * max_pheromone.size() * population_coefficient.size() * alpha_exp.size() *
         beta_exp.size();
}

std::vector<ACOConfig> TuneGrid::expand() const {
  std::vector<ACOConfig> out;
  for (double e : evaporation_rate)
    for (double p : max_pheromone)
      for (int c : population_coefficient)
        for (double a : alpha_exp)
          for (double b : beta_exp) {
            ACOConfig cfg;
            cfg.evaporation_rate = e;
            cfg.max_pheromone = p;
            cfg.population_coefficient = c;
            cfg.alpha_exp = a;
            cfg.beta_exp = b;
            out.push_back(cfg);
          }
  return out;
}

std::vector<TuneRow> run_tune(const Instance& inst, const TuneGrid& grid, std::span<const std::uint64_t> seeds,
                              const MaximinContext& context) {
  const Eigen::VectorXd eta = heuristic_index(inst);
  const FitnessFunction fitness = maximin_fitness(inst, context);
  std::vector<TuneRow> rows;
  int cell = 0;
  for (const ACOConfig& base : grid.expand()) {
    TuneRow row;
    row.cell = ++cell;
    row.config = base;
    try {
      for (std::uint64_t seed : seeds) {
        ACOConfig cfg = base;
        cfg.seed = seed;
        const SolverReport r = run_aco(inst.n, inst.m_servers, eta, fitness, cfg);
        row.mean_objective += r.best_fitness.value;
        row.mean_runtime_ms += r.elapsed_ms;
        ++row.runs;
      }
      if (row.runs) {
        row.mean_objective /= row.runs;
        row.mean_runtime_ms /= row.runs;
      }
    } catch (const std::exception& e) {
      row.error = e.what();
      row.mean_objective = std::nan("");
    }
    rows.push_back(row);
  }
  return rows;
}

void write_tune_csv(std::span<const TuneRow> rows, std::ostream& out, bool include_runtime) {
  out << kTuneCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.cell << ',' << format_number(r.config.evaporation_rate, 4) << ','
        << format_number(r.config.max_pheromone, 4) << ',' << r.config.population_coefficient << ','
        << format_number(r.config.alpha_exp, 4) << ',' << format_number(r.config.beta_exp, 4) << ',' << r.runs << ','
        << format_number(r.mean_objective) << ',' << format_number(include_runtime ? r.mean_runtime_ms : 0.0, 3)
        << '\n';
  }
}

double relaxed_tolerance(double tolerance, double rho) {
  return tolerance * std::max(1.0, (1.0 - kReferenceRho) / (1.0 - rho));
}

bool ValidationReport::pass() const {
  if (!enforceable) return true;
  for (const auto& l : lines)
    if (!l.pass) return false;
  return true;
}

Instance validation_network() {
  GeneratorParams p;
  p.n = 6;
  p.m_servers = 3;
  p.demand_lo_range = {40, 60};
  p.demand_offsets = {10, 20};
  p.seed = 11;
  return generate_instance(p);
}

namespace {

ValidationLine make_line(std::string quantity, double rho, double analytic, double simulated, double se, double tol) {
  ValidationLine l;
  l.quantity = std::move(quantity);
  l.rho = rho;
  l.analytic = analytic;
  l.simulated = simulated;
  l.standard_error = se;
  l.relative_error = (simulated - analytic) / analytic;
  l.tolerance = tol;
  l.pass = std::abs(l.relative_error) < tol;
  return l;
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& options) {
  ValidationReport report;
  if (options.events < kMinSimulationEvents) {
    report.enforceable = false;
    report.warnings.push_back("event budget " + std::to_string(options.events) + " is below " +
                              std::to_string(kMinSimulationEvents) + "; tolerance is not enforceable");
  }
  for (double rho : options.rho) {
    if (!(rho > 0 && rho < 1)) {
      report.warnings.push_back("skipping rho = " + format_number(rho, 4) + " (outside (0, 1))");
      continue;
    }
    const double lambda = rho * options.mu;
    const auto analytic = mm1_metrics(lambda, options.mu);
    const QueueSimulation sim = mm1_simulate_unchecked(lambda, options.mu, options.events, options.seed);
    const double tol = relaxed_tolerance(options.tolerance, rho);
    report.lines.push_back(make_line("P0", rho, analytic->idle_prob, sim.idle_prob, sim.idle_prob_se, tol));
    report.lines.push_back(make_line("Lq", rho, analytic->queue_length, sim.queue_length, sim.queue_length_se, tol));
  }
  if (options.network) {
    const Instance net = validation_network();
    const std::vector<int> open{0, 2, 4};
    const double analytic = *crisp_objective_slice(net, open, Slice::mid);
    const NetworkSimulation sim = simulate_network(net, open, Slice::mid, options.events, options.seed);
    double max_rho = 0;
    for (const auto& q : queue_metrics(net, open))
      max_rho = std::max(max_rho, q.slices[static_cast<std::size_t>(Slice::mid)].occupancy);
    report.lines.push_back(make_line("benefit", max_rho, analytic, sim.benefit_rate, sim.benefit_rate_se,
                                     relaxed_tolerance(options.tolerance, max_rho)));
  }
  return report;
}

}  // namespace fqmbl
