#include "fqmbl/fuzzy_eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "fqmbl/instances.hpp"
#include "fqmbl/model.hpp"

namespace fqmbl {

SpreadComponents spread_components(const TriFuzzyd& z) { return {z.mid - z.lo, z.mid, z.hi - z.mid}; }

bool ComponentBounds::degenerate() const {
  const double scale = std::max({1.0, std::abs(min_bound), std::abs(max_bound)});
  return !found || max_bound - min_bound <= 1e-12 * scale;
}

const char* provenance_name(BoundProvenance p) {
  return p == BoundProvenance::oracle_exact ? "oracle-exact" : "metaheuristic-estimated";
}

std::string MaximinContext::id() const {
  char buf[64];
  std::string text = provenance_name(provenance);
  for (const auto& b : bounds) {
    std::snprintf(buf, sizeof buf, "|%.17g,%.17g,%d", b.min_bound, b.max_bound, b.found ? 1 : 0);
    text += buf;
  }
  return content_hash(text);
}

namespace {

double ramp(double num, const ComponentBounds& b) {
  if (b.degenerate()) return 1.0;
  return std::clamp(num / (b.max_bound - b.min_bound), 0.0, 1.0);
}

}  // namespace

Memberships membership_values(const SpreadComponents& c, const MaximinContext& ctx) {
  const auto& [b1, b2, b3] = ctx.bounds;
  return {ramp(b1.max_bound - c.z1, b1), ramp(c.z2 - b2.min_bound, b2), ramp(c.z3 - b3.min_bound, b3)};
}

double capacity_threshold(const TriFuzzyd& idle_min, double gamma) {
  // Right-hand side 1 - beta, reordered so it stays a normal triangle.
  const TriFuzzyd rhs{1.0 - idle_min.hi, 1.0 - idle_min.mid, 1.0 - idle_min.lo};
  return rhs.hi - gamma * (rhs.hi - rhs.mid);
}

namespace {

FuzzyCapacity capacity_from_queues(const Instance& inst, const QueueMetrics& queues) {
  FuzzyCapacity out;
  out.threshold = capacity_threshold(inst.idle_min, inst.gamma);
  for (const auto& q : queues) {
    const double margin = out.threshold - q.occupancy.mid;
    out.margins.push_back(margin);
    out.occupancy.push_back(q.occupancy);
    if (margin < 0) out.feasible = false;
  }
  return out;
}

}  // namespace

FuzzyCapacity fuzzy_capacity_feasible(const Instance& inst, std::span<const int> open) {
  return capacity_from_queues(inst, queue_metrics(inst, open));
}

FuzzyCapacity fuzzy_capacity_feasible(const Instance& inst, const Solution& sol) {
  return fuzzy_capacity_feasible(inst, sol.open());
}

FuzzyAssessment assess(const Instance& inst, std::span<const int> open) {
  const Eigen::MatrixXd p = logit_allocation(inst, open);
  const QueueMetrics queues = queue_metrics(inst, p, open);
  FuzzyAssessment out;
  out.capacity = capacity_from_queues(inst, queues);

  double violation = 0;
  const double scale = std::max(out.capacity.threshold, 1e-9);
  for (double margin : out.capacity.margins)
    if (margin < 0) violation += -margin / scale;
  bool stable = true;
  for (const auto& q : queues)
    for (const auto& s : q.slices)
      if (!s.stable()) {
        stable = false;
        violation += s.occupancy - 1.0;
      }

  if (stable) {
    std::array<double, 3> v{};
    for (Slice s : kAllSlices) {
      double total = 0;
      for (std::size_t k = 0; k < open.size(); ++k) {
        const SliceQueue& q = queues[k].slices[static_cast<std::size_t>(s)];
        const double retained = (1.0 - q.occupancy) + q.join * q.occupancy;
        const int j = open[k];
        for (int i = 0; i < inst.n; ++i) total += inst.weight(i, j) * at(inst.demand[i], s) * p(i, j) * retained;
      }
      v[static_cast<std::size_t>(s)] = total;
    }
    out.objective = sorted(TriFuzzyd{v[0], v[1], v[2]});
  }
  out.violation = out.feasible() ? 0.0 : violation;
  return out;
}

std::optional<TriFuzzyd> fuzzy_objective(const Instance& inst, std::span<const int> open) {
  std::array<double, 3> v{};
  for (Slice s : kAllSlices) {
    const auto z = crisp_objective_slice(inst, open, s);
    if (!z) return std::nullopt;
    v[static_cast<std::size_t>(s)] = *z;
  }
  return sorted(TriFuzzyd{v[0], v[1], v[2]});
}

std::optional<TriFuzzyd> fuzzy_objective(const Instance& inst, const Solution& sol) {
  return fuzzy_objective(inst, sol.open());
}

namespace {

Fitness maximin_of(const FuzzyAssessment& a, const MaximinContext& ctx) {
  if (!a.feasible()) return {-(1.0 + a.violation), false, a.violation};
  return {maximin_level(membership_values(spread_components(*a.objective), ctx)), true, 0.0};
}

}  // namespace

double evaluate(const Instance& inst, std::span<const int> open, const MaximinContext& ctx) {
  return maximin_of(assess(inst, open), ctx).value;
}

double evaluate(const Instance& inst, const Solution& sol, const MaximinContext& ctx) {
  return evaluate(inst, sol.open(), ctx);
}

FitnessFunction maximin_fitness(const Instance& inst, const MaximinContext& ctx) {
  return {Sense::maximize, [&inst, ctx](std::span<const int> open) { return maximin_of(assess(inst, open), ctx); },
          "maximin"};
}

FitnessFunction spread_fitness(const Instance& inst, int component, Sense sense) {
  if (component < 0 || component > 2) throw std::invalid_argument("spread_fitness: component must be 0, 1 or 2");
  std::string label = std::string(sense == Sense::minimize ? "min" : "max") + "_z" + std::to_string(component + 1);
  return {sense,
          [&inst, component](std::span<const int> open) -> Fitness {
            const FuzzyAssessment a = assess(inst, open);
            if (!a.feasible()) return {-(1.0 + a.violation), false, a.violation};
            return {spread_components(*a.objective)[component], true, 0.0};
          },
          std::move(label)};
}

BoundEstimate estimate_bounds(const Instance& inst, const SolverHandle& solver,
                              std::span<const std::uint64_t> seeds, BoundProvenance provenance) {
  if (seeds.size() != 6) throw std::invalid_argument("estimate_bounds: expected 6 seeds");
  BoundEstimate out;
  out.context.provenance = provenance;
  for (int k = 0; k < 6; ++k) {
    const int component = k / 2;
    const Sense sense = (k % 2 == 0) ? Sense::minimize : Sense::maximize;
    out.runs.push_back(solver(spread_fitness(inst, component, sense), seeds[static_cast<std::size_t>(k)]));
  }

  // Every feasible best solution is a witness for all three components, so
  // each bound is the extreme over all six witnesses.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::array<double, 3> lo{inf, inf, inf}, hi{-inf, -inf, -inf};
  for (const auto& run : out.runs) {
    if (!run.best_fitness.feasible) continue;
    const auto z = fuzzy_objective(inst, run.best);
    if (!z) continue;
    const SpreadComponents c = spread_components(*z);
    for (int i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], c[i]);
      hi[i] = std::max(hi[i], c[i]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    auto& b = out.context.bounds[static_cast<std::size_t>(i)];
    b.found = lo[i] <= hi[i];
    b.min_bound = b.found ? lo[i] : 0.0;
    b.max_bound = b.found ? hi[i] : 0.0;
  }
  return out;
}

}  // namespace fqmbl
