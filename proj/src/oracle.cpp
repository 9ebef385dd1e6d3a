#include "fqmbl/oracle.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>
#include <utility>

#include "fqmbl/model.hpp"
#include "fqmbl/queueing.hpp"

namespace fqmbl {

long long enumeration_budget_from_env() {
  if (const char* raw = std::getenv("FQMBL_ENUM_BUDGET")) {
    char* end = nullptr;
    const long long v = std::strtoll(raw, &end, 10);
    if (end != raw && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumerationBudget;
}

BudgetExceeded::BudgetExceeded(long long subsets, long long budget)
    : std::runtime_error("enumeration refused: " + std::to_string(subsets) + " subsets exceed the budget of " +
                         std::to_string(budget)),
      subsets_(subsets) {}

namespace {

template <typename Visit>
void for_each_subset(int n, int m, Visit&& visit) {
  std::vector<int> idx(static_cast<std::size_t>(m));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(std::as_const(idx));
    int k = m - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == n - m + k) --k;
    if (k < 0) return;
    ++idx[static_cast<std::size_t>(k)];
    for (int t = k + 1; t < m; ++t) idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t - 1)] + 1;
  }
}

void check_budget(int n, int m, long long budget) {
  if (m < 1 || m >= n) throw std::invalid_argument("enumeration: requires 1 <= m < n");
  const long long subsets = binomial(n, m);
  if (subsets > budget) throw BudgetExceeded(subsets, budget);
}

}  // namespace

EnumerationResult enumerate_optimum(int n, int m, const FitnessFunction& fitness, long long budget, bool keep_table) {
  check_budget(n, m, budget);
  EnumerationResult out;
  for_each_subset(n, m, [&](const std::vector<int>& s) {
    const Fitness f = fitness(s);
    ++out.evaluated_count;
    if (out.evaluated_count == 1 || better(f, out.best_fitness, fitness.sense)) {
      out.best = s;
      out.best_fitness = f;
    }
    if (keep_table) out.table.emplace_back(s, f);
  });
  return out;
}

EnumerationResult enumerate_optimum(const Instance& inst, const FitnessFunction& fitness, long long budget,
                                    bool keep_table) {
  return enumerate_optimum(inst.n, inst.m_servers, fitness, budget, keep_table);
}

MaximinContext exact_bounds(const Instance& inst, long long budget) {
  check_budget(inst.n, inst.m_servers, budget);
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::array<double, 3> lo{inf, inf, inf}, hi{-inf, -inf, -inf};
  bool any = false;
  for_each_subset(inst.n, inst.m_servers, [&](const std::vector<int>& s) {
    const FuzzyAssessment a = assess(inst, s);
    if (!a.feasible()) return;
    any = true;
    const SpreadComponents c = spread_components(*a.objective);
    for (int i = 0; i < 3; ++i) {
      lo[static_cast<std::size_t>(i)] = std::min(lo[static_cast<std::size_t>(i)], c[i]);
      hi[static_cast<std::size_t>(i)] = std::max(hi[static_cast<std::size_t>(i)], c[i]);
    }
  });
  if (!any) throw InfeasibleInstance("exact_bounds: no feasible location set exists for this instance");
  MaximinContext ctx;
  ctx.provenance = BoundProvenance::oracle_exact;
  for (std::size_t i = 0; i < 3; ++i) ctx.bounds[i] = {lo[i], hi[i], true};
  return ctx;
}

SolverHandle enumeration_solver(const Instance& inst, long long budget) {
  return [&inst, budget](const FitnessFunction& fitness, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    const EnumerationResult r = enumerate_optimum(inst, fitness, budget);
    SolverReport report;
    report.algorithm = "brute";
    report.objective_label = fitness.label;
    report.best = r.best;
    report.best_fitness = r.best_fitness;
    report.iterations = 1;
    report.evaluations = r.evaluated_count;
    report.termination = Termination::exhaustive;
    report.trace = {r.best_fitness.value};
    report.seed = seed;
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
  };
}

namespace {

struct BatchStats {
  explicit BatchStats(long long events, int batches = 20) : per_batch(std::max(1LL, events / batches)) {}

  // Accumulates time-weighted samples; closes a batch every `per_batch` events.
  void add(double dt, double a, double b) {
    time += dt;
    sum_a += a * dt;
    sum_b += b * dt;
    bt += dt;
    ba += a * dt;
    bb += b * dt;
    if (++count % per_batch == 0 && bt > 0) {
      means_a.push_back(ba / bt);
      means_b.push_back(bb / bt);
      bt = ba = bb = 0;
    }
  }

  static double se(const std::vector<double>& v) {
    if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double ss = 0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  }

  long long per_batch;
  long long count = 0;
  double time = 0, sum_a = 0, sum_b = 0;
  double bt = 0, ba = 0, bb = 0;
  std::vector<double> means_a, means_b;
};

}  // namespace

namespace {

QueueSimulation simulate_plain(double lambda, double mu, long long event_budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> next_arrival(lambda);
  std::exponential_distribution<double> next_service(mu);

  double t = 0;
  double arrival_at = next_arrival(rng);
  double departure_at = std::numeric_limits<double>::infinity();
  long long in_system = 0;
  BatchStats stats(event_budget);
  for (long long e = 0; e < event_budget; ++e) {
    const double t_next = std::min(arrival_at, departure_at);
    stats.add(t_next - t, in_system == 0 ? 1.0 : 0.0, static_cast<double>(std::max(0LL, in_system - 1)));
    t = t_next;
    if (arrival_at <= departure_at) {
      if (in_system++ == 0) departure_at = t + next_service(rng);
      arrival_at = t + next_arrival(rng);
    } else {
      departure_at = (--in_system > 0) ? t + next_service(rng) : std::numeric_limits<double>::infinity();
    }
  }
  QueueSimulation out;
  out.idle_prob = stats.sum_a / stats.time;
  out.queue_length = stats.sum_b / stats.time;
  out.idle_prob_se = BatchStats::se(stats.means_a);
  out.queue_length_se = BatchStats::se(stats.means_b);
  out.simulated_time = stats.time;
  out.events = event_budget;
  return out;
}

// Ratio estimate sum(A) / sum(T) corrected by the controls C (zero mean),
// coefficients from least squares on the per-batch residuals.
std::pair<double, double> controlled_ratio(const Eigen::VectorXd& a, const Eigen::VectorXd& t,
                                           const Eigen::MatrixXd& c) {
  const double total_t = t.sum();
  const double plain = a.sum() / total_t;
  const Eigen::VectorXd y = a - plain * t;
  const Eigen::VectorXd beta = c.colPivHouseholderQr().solve(y);
  const double estimate = (a.sum() - beta.dot(c.colwise().sum())) / total_t;
  const Eigen::VectorXd resid = a - estimate * t - c * beta;
  const auto b = static_cast<double>(a.size());
  const double dof = std::max(1.0, b - static_cast<double>(c.cols()) - 1.0);
  return {estimate, std::sqrt(resid.squaredNorm() * b / dof) / total_t};
}

QueueSimulation simulate_controlled(double lambda, double mu, long long event_budget, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double p_arrival = lambda / (lambda + mu);
  const int batches = static_cast<int>(std::min<long long>(50, std::max<long long>(4, event_budget / 100)));
  const long long per_batch = std::max(1LL, event_budget / batches);

  // Per batch: expected time, time at 0, time-weighted waiting line, and the
  // controls sum g(N) (1{arrival} - p) for g = 1 and g = N over busy states.
  Eigen::VectorXd time = Eigen::VectorXd::Zero(batches);
  Eigen::VectorXd idle = time, waiting = time;
  Eigen::MatrixXd controls = Eigen::MatrixXd::Zero(batches, 2);
  long long in_system = 0;
  double total_time = 0;
  for (long long e = 0; e < event_budget; ++e) {
    const auto b = static_cast<Eigen::Index>(std::min<long long>(e / per_batch, batches - 1));
    const double hold = 1.0 / (in_system == 0 ? lambda : lambda + mu);
    time(b) += hold;
    total_time += hold;
    if (in_system == 0) {
      idle(b) += hold;
      in_system = 1;
      continue;
    }
    waiting(b) += hold * static_cast<double>(in_system - 1);
    const bool arrival = unit(rng) < p_arrival;
    const double x = (arrival ? 1.0 : 0.0) - p_arrival;
    controls(b, 0) += x;
    controls(b, 1) += x * static_cast<double>(in_system);
    in_system += arrival ? 1 : -1;
  }
  QueueSimulation out;
  std::tie(out.idle_prob, out.idle_prob_se) = controlled_ratio(idle, time, controls);
  std::tie(out.queue_length, out.queue_length_se) = controlled_ratio(waiting, time, controls);
  out.simulated_time = total_time;
  out.events = event_budget;
  return out;
}

}  // namespace

QueueSimulation mm1_simulate_unchecked(double lambda, double mu, long long event_budget, std::uint64_t seed,
                                       Mm1Estimator estimator) {
  if (!(mu > 0) || !(lambda > 0)) throw std::domain_error("mm1_simulate: rates must be positive");
  if (lambda >= mu) throw std::domain_error("mm1_simulate: unstable queue (lambda >= mu)");
  if (event_budget < 1) throw std::domain_error("mm1_simulate: event budget must be positive");
  return estimator == Mm1Estimator::plain ? simulate_plain(lambda, mu, event_budget, seed)
                                          : simulate_controlled(lambda, mu, event_budget, seed);
}

QueueSimulation mm1_simulate(double lambda, double mu, long long event_budget, std::uint64_t seed,
                             Mm1Estimator estimator) {
  if (event_budget < kMinSimulationEvents)
    throw std::domain_error("mm1_simulate: event budget below " + std::to_string(kMinSimulationEvents));
  return mm1_simulate_unchecked(lambda, mu, event_budget, seed, estimator);
}

NetworkSimulation simulate_network(const Instance& inst, std::span<const int> open, Slice slice,
                                   long long event_budget, std::uint64_t seed) {
  if (event_budget < 1) throw std::domain_error("simulate_network: event budget must be positive");
  const Eigen::MatrixXd p = logit_allocation(inst, open);
  const QueueMetrics queues = queue_metrics(inst, p, open);
  const std::size_t k = open.size();
  std::vector<double> mu(k), join(k);
  for (std::size_t f = 0; f < k; ++f) {
    const SliceQueue& q = queues[f].slices[static_cast<std::size_t>(slice)];
    if (!q.stable()) throw std::domain_error("simulate_network: facility unstable at this slice");
    mu[f] = at(inst.service[static_cast<std::size_t>(open[f])], slice);
    join[f] = q.join;
  }
  std::vector<double> origin_rate(static_cast<std::size_t>(inst.n));
  for (int i = 0; i < inst.n; ++i) origin_rate[static_cast<std::size_t>(i)] = at(inst.demand[static_cast<std::size_t>(i)], slice);
  const double total_arrival = std::accumulate(origin_rate.begin(), origin_rate.end(), 0.0);
  if (!(total_arrival > 0)) return {};

  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> origin(origin_rate.begin(), origin_rate.end());
  std::vector<std::discrete_distribution<int>> route;
  for (int i = 0; i < inst.n; ++i) {
    std::vector<double> w(k);
    for (std::size_t f = 0; f < k; ++f) w[f] = p(i, open[f]);
    route.emplace_back(w.begin(), w.end());
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Memoryless network: sample the next event from the total transition rate.
  std::vector<long long> in_system(k, 0);
  double t = 0, credited = 0;
  const long long per_batch = std::max(1LL, event_budget / 20);
  double batch_t = 0, batch_credit = 0;
  std::vector<double> batch_rates;
  for (long long e = 0; e < event_budget; ++e) {
    double busy_service_rate = 0;
    for (std::size_t f = 0; f < k; ++f)
      if (in_system[f] > 0) busy_service_rate += mu[f];
    const double rate = total_arrival + busy_service_rate;
    const double dt = std::exponential_distribution<double>(rate)(rng);
    t += dt;
    batch_t += dt;
    double credit = 0;
    if (unit(rng) * rate < total_arrival) {
      const int i = origin(rng);
      const auto f = static_cast<std::size_t>(route[static_cast<std::size_t>(i)](rng));
      credit = inst.weight(i, open[f]) * (in_system[f] == 0 ? 1.0 : join[f]);
      ++in_system[f];
    } else {
      double pick = unit(rng) * busy_service_rate;
      std::size_t f = 0;
      for (; f < k; ++f) {
        if (in_system[f] == 0) continue;
        if (pick < mu[f]) break;
        pick -= mu[f];
      }
      if (f == k) {  // rounding: fall back to the last busy facility
        for (f = k; f-- > 0;)
          if (in_system[f] > 0) break;
      }
      --in_system[f];
    }
    credited += credit;
    batch_credit += credit;
    if ((e + 1) % per_batch == 0 && batch_t > 0) {
      batch_rates.push_back(batch_credit / batch_t);
      batch_t = batch_credit = 0;
    }
  }
  NetworkSimulation out;
  out.benefit_rate = credited / t;
  out.benefit_rate_se = BatchStats::se(batch_rates);
  out.simulated_time = t;
  out.events = event_budget;
  return out;
}

}  // namespace fqmbl
