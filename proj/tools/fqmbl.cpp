// fqmbl: generate instances, solve them, and run the GA/ACO benchmark,
// tuning and queue-validation experiments.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure, 3 validation failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fqmbl/bench.hpp"
#include "fqmbl/instances.hpp"
#include "fqmbl/oracle.hpp"
#include "fqmbl/protocol.hpp"
#include "fqmbl/serialization.hpp"

namespace fs = std::filesystem;
using namespace fqmbl;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitValidation = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Overrides {
  std::optional<double> gamma;
  std::optional<double> logit;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--gamma", gamma, "Truth threshold for the fuzzy capacity constraint")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--logit", logit, "Logit distance sensitivity")->check(CLI::PositiveNumber);
  }

  void apply(Instance& inst) const {
    if (gamma) inst.gamma = *gamma;
    if (logit) inst.logit_sensitivity = *logit;
    validate(inst);
  }
};

std::string instance_id(const fs::path& path) { return path.stem().string(); }

Instance load_or_table1(const std::string& path, bool table1) {
  if (table1) return load_table1();
  if (path.empty()) throw UsageError("either --instance or --table1 is required");
  return load_instance(path);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_filename(out.stem().string() + suffix);
  return p;
}

// ---- generate -------------------------------------------------------------

struct GenerateArgs {
  GeneratorParams params;
  std::string out;
  bool table1 = false;
  std::vector<int> demand_range{4, 80};
  std::vector<int> service_range{144, 190};
  std::vector<int> distance_range{1, 35};
  Overrides overrides;
};

int cmd_generate(const GenerateArgs& a) {
  Instance inst;
  if (a.table1) {
    inst = load_table1();
  } else {
    GeneratorParams p = a.params;
    p.demand_lo_range = {a.demand_range.at(0), a.demand_range.at(1)};
    p.service_lo_range = {a.service_range.at(0), a.service_range.at(1)};
    p.distance_range = {a.distance_range.at(0), a.distance_range.at(1)};
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    inst = generate_instance(p);
  }
  a.overrides.apply(inst);
  save_instance(inst, a.out);
  std::cout << "wrote " << a.out << " (n=" << inst.n << ", m=" << inst.m_servers
            << ", hash=" << content_hash(instance_to_json(inst)) << ")\n";
  return 0;
}

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::string instance;
  bool table1 = false;
  std::string algo = "ga";
  std::uint64_t seed = 1;
  std::string out;
  std::string context;
  bool exact_bounds = false;
  Overrides overrides;
};

int cmd_solve(const SolveArgs& a) {
  Instance inst = load_or_table1(a.instance, a.table1);
  a.overrides.apply(inst);
  ProtocolOptions po;
  po.algorithm = parse_algorithm(a.algo);
  po.seed = a.seed;
  po.exact_bounds = a.exact_bounds;
  po.budget = enumeration_budget_from_env();
  if (!a.context.empty()) po.context = load_context(a.context);

  const ProtocolResult res = solve_protocol(inst, po);
  const std::string id = a.table1 ? "table1" : instance_id(a.instance);
  if (!a.out.empty()) write_json(solve_result_to_json(res, id, po.algorithm, a.seed), a.out);

  const SolverReport& f = res.final_run;
  std::cout << "algorithm   " << algorithm_name(po.algorithm) << "\n"
            << "objective   " << format_number(f.best_fitness.value) << (f.best_fitness.feasible ? "" : " (infeasible)")
            << "\n"
            << "facilities  " << format_facilities(f.best) << "\n"
            << "iterations  " << f.iterations << " (" << termination_name(f.termination) << ")\n"
            << "runtime     " << format_number(res.total_ms, 1) << " ms\n"
            << "bounds      " << res.context.id() << " (" << provenance_name(res.context.provenance) << ")\n";
  for (const auto& note : res.notes) std::cout << "note        " << note << "\n";
  return 0;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
  std::vector<std::string> instances;
  bool table1 = false;
  int replications = 5;
  std::uint64_t seed = 1;
  std::string out = "bench.csv";
  bool exact_bounds = false;
  Overrides overrides;
};

int cmd_bench(const BenchArgs& a) {
  std::vector<BenchInstance> list;
  if (a.table1) list.push_back({"table1", load_table1()});
  for (const auto& path : a.instances) list.push_back({instance_id(path), load_instance(path)});
  if (list.empty()) throw UsageError("bench needs --instance or --table1");
  for (auto& bi : list) a.overrides.apply(bi.instance);

  BenchOptions options;
  options.replications = a.replications;
  options.base_seed = a.seed;
  options.exact_bounds = a.exact_bounds;
  options.budget = enumeration_budget_from_env();
  const auto rows = run_bench(list, options);
  const auto summary = summarize(rows);

  const fs::path out = a.out;
  {
    std::ofstream csv(out, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + out.string());
    write_bench_csv(rows, csv);
  }
  std::ofstream runtime(sibling(out, "_runtime_vs_n.dat"), std::ios::binary);
  write_plot_runtime(summary, runtime);
  std::ofstream objective(sibling(out, "_objective_vs_n.dat"), std::ios::binary);
  write_plot_objective(summary, objective);

  write_summary(summary, std::cout);
  for (const auto& r : rows)
    if (!r.error.empty()) std::cerr << "run failed: " << r.algorithm << " " << r.instance << " seed " << r.seed << ": "
                                    << r.error << "\n";
  return 0;
}

// ---- tune -----------------------------------------------------------------

struct TuneArgs {
  std::string instance;
  bool table1 = false;
  std::uint64_t seed = 1;
  int replications = 1;
  std::string out = "tune.csv";
  std::string context;
  bool exact_bounds = false;
  TuneGrid grid;
  Overrides overrides;
};

int cmd_tune(const TuneArgs& a) {
  Instance inst = load_or_table1(a.instance, a.table1);
  a.overrides.apply(inst);
  if (a.grid.cells() == 0) throw UsageError("every parameter needs at least one level");
  for (const auto& cfg : a.grid.expand()) {
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }

  MaximinContext ctx;
  if (!a.context.empty()) {
    ctx = load_context(a.context);
  } else {
    ProtocolOptions po;
    po.algorithm = Algorithm::aco;
    po.seed = a.seed;
    po.exact_bounds = a.exact_bounds;
    po.budget = enumeration_budget_from_env();
    ctx = solve_protocol(inst, po).context;
  }
  std::vector<std::uint64_t> seeds;
  for (int r = 0; r < a.replications; ++r) seeds.push_back(a.seed + static_cast<std::uint64_t>(r));
  const auto rows = run_tune(inst, a.grid, seeds, ctx);
  std::ofstream csv(a.out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + a.out);
  write_tune_csv(rows, csv);
  std::cout << "wrote " << rows.size() << " cells to " << a.out << " (bounds " << ctx.id() << ")\n";
  return 0;
}

// ---- validate -------------------------------------------------------------

struct ValidateArgs {
  ValidationOptions options;
  std::vector<double> extra_rho;
  bool no_network = false;
};

int cmd_validate(ValidateArgs a) {
  a.options.rho.insert(a.options.rho.end(), a.extra_rho.begin(), a.extra_rho.end());
  a.options.network = !a.no_network;
  const ValidationReport report = run_validation(a.options);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "quantity   rho     analytic      simulated     std.err     rel.err    tolerance  verdict\n";
  for (const auto& l : report.lines) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-8s %5.3f %12.6f %14.6f %11.6f %+10.4f%% %9.4f%%  %s\n", l.quantity.c_str(), l.rho,
                  l.analytic, l.simulated, l.standard_error, 100 * l.relative_error, 100 * l.tolerance,
                  report.enforceable ? (l.pass ? "pass" : "FAIL") : "n/a");
    std::cout << buf;
  }
  const bool ok = report.pass();
  std::cout << (report.enforceable ? (ok ? "PASS\n" : "FAIL\n") : "NOT ENFORCED\n");
  return ok ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy queuing maximal benefit location: solvers and benchmark harness"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a random instance or the 20-node benchmark network");
  g->add_option("--n", gen.params.n, "Node count");
  g->add_option("--m", gen.params.m_servers, "Facility count");
  g->add_option("--seed", gen.params.seed, "Generator seed");
  g->add_option("--out", gen.out, "Output instance file")->required();
  g->add_flag("--table1", gen.table1, "Write the 20-node benchmark fixture");
  g->add_option("--mql", gen.params.mql, "Maximum queuing length")->check(CLI::PositiveNumber);
  g->add_option("--demand-range", gen.demand_range, "Range of the demand lo component")->expected(2);
  g->add_option("--service-range", gen.service_range, "Range of the service lo component")->expected(2);
  g->add_option("--distance-range", gen.distance_range, "Range of pairwise distances")->expected(2);
  gen.overrides.add_to(g);

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Run the bound runs and the final maximin run");
  s->add_option("--instance", sol.instance, "Instance file");
  s->add_flag("--table1", sol.table1, "Use the 20-node benchmark fixture");
  s->add_option("--algo", sol.algo, "Solver")->check(CLI::IsMember({"ga", "aco", "brute"}));
  s->add_option("--seed", sol.seed, "Seed of the final run; bound-run seeds derive from it");
  s->add_option("--out", sol.out, "Result file (JSON)");
  s->add_option("--context", sol.context, "Replay bounds from a context or result file");
  s->add_flag("--exact-bounds", sol.exact_bounds, "Enumerate bounds exactly when the budget allows");
  sol.overrides.add_to(s);

  BenchArgs ben;
  auto* b = app.add_subcommand("bench", "Paired GA/ACO replications");
  b->add_option("--instance", ben.instances, "Instance files");
  b->add_flag("--table1", ben.table1, "Include the 20-node benchmark fixture");
  b->add_option("--replications", ben.replications, "Seeds per algorithm and instance")->check(CLI::PositiveNumber);
  b->add_option("--seed", ben.seed, "First seed");
  b->add_option("--out", ben.out, "Result CSV; plot data is written next to it");
  b->add_flag("--exact-bounds", ben.exact_bounds, "Enumerate bounds exactly when the budget allows");
  ben.overrides.add_to(b);

  TuneArgs tun;
  auto* t = app.add_subcommand("tune", "Full-factorial ACO parameter grid");
  t->add_option("--instance", tun.instance, "Instance file");
  t->add_flag("--table1", tun.table1, "Use the 20-node benchmark fixture");
  t->add_option("--seed", tun.seed, "First seed");
  t->add_option("--replications", tun.replications, "Seeds per cell")->check(CLI::PositiveNumber);
  t->add_option("--out", tun.out, "Result CSV");
  t->add_option("--context", tun.context, "Bound context or result file to evaluate under");
  t->add_flag("--exact-bounds", tun.exact_bounds, "Enumerate bounds exactly when the budget allows");
  t->add_option("--evaporation", tun.grid.evaporation_rate, "Levels of the trail persistence")->delimiter(',');
  t->add_option("--max-pheromone", tun.grid.max_pheromone, "Levels of the pheromone cap")->delimiter(',');
  t->add_option("--coefficient", tun.grid.population_coefficient, "Levels of the population coefficient")
      ->delimiter(',');
  t->add_option("--alpha", tun.grid.alpha_exp, "Levels of the pheromone exponent")->delimiter(',');
  t->add_option("--beta", tun.grid.beta_exp, "Levels of the desirability exponent")->delimiter(',');
  tun.overrides.add_to(t);

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "Check the analytic queue formulas against simulation");
  v->add_option("--events", val.options.events, "Events per simulation")->check(CLI::PositiveNumber);
  v->add_option("--seed", val.options.seed, "Simulation seed");
  v->add_option("--tolerance", val.options.tolerance, "Relative tolerance at the reference occupancy")
      ->check(CLI::PositiveNumber);
  v->add_option("--rho", val.extra_rho, "Extra occupancies to check")->delimiter(',');
  v->add_flag("--no-network", val.no_network, "Skip the whole-network check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*s) return cmd_solve(sol);
    if (*b) return cmd_bench(ben);
    if (*t) return cmd_tune(tun);
    if (*v) return cmd_validate(val);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
