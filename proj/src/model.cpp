#include "fqmbl/model.hpp"

#include <cstddef>

namespace fqmbl {

Eigen::MatrixXd logit_allocation(const Instance& inst, std::span<const int> open) {
  return logit_allocation(inst.distance, open, inst.logit_sensitivity);
}

Eigen::MatrixXd logit_allocation(const Instance& inst, const Solution& sol) {
  return logit_allocation(inst, sol.open());
}

std::vector<TriFuzzyd> aggregate_demand(const Instance& inst, const Eigen::MatrixXd& allocation,
                                        std::span<const int> open) {
  std::vector<TriFuzzyd> out(open.size());
  for (std::size_t k = 0; k < open.size(); ++k) {
    const int j = open[k];
    TriFuzzyd acc;
    for (int i = 0; i < inst.n; ++i) {
      const TriFuzzyd part = tri_scale(inst.demand[i], allocation(i, j));
      acc = {acc.lo + part.lo, acc.mid + part.mid, acc.hi + part.hi};
    }
    out[k] = acc;
  }
  return out;
}

QueueMetrics queue_metrics(const Instance& inst, const Eigen::MatrixXd& allocation,
                           std::span<const int> open) {
  const auto agg = aggregate_demand(inst, allocation, open);
  QueueMetrics out(open.size());
  for (std::size_t k = 0; k < open.size(); ++k) {
    const int j = open[k];
    FacilityQueue& f = out[k];
    f.node = j;
    f.agg_demand = agg[k];
    f.occupancy = tri_combine(agg[k], inst.service[j], FuzzyOp::div);
    for (Slice s : kAllSlices) {
      SliceQueue& q = f.slices[static_cast<std::size_t>(s)];
      const double lambda = at(agg[k], s);
      const double mu = at(inst.service[j], s);
      q.occupancy = lambda / mu;
      q.mm1 = mm1_metrics(lambda, mu);
      q.join = q.mm1 ? join_probability(q.mm1->queue_length, inst.mql) : 0.0;
    }
  }
  return out;
}

QueueMetrics queue_metrics(const Instance& inst, std::span<const int> open) {
  return queue_metrics(inst, logit_allocation(inst, open), open);
}

std::optional<double> crisp_objective_slice(const Instance& inst, const Eigen::MatrixXd& allocation,
                                            std::span<const int> open, Slice s) {
  const auto queues = queue_metrics(inst, allocation, open);
  double total = 0;
  for (std::size_t k = 0; k < open.size(); ++k) {
    const SliceQueue& q = queues[k].slices[static_cast<std::size_t>(s)];
    if (!q.stable()) return std::nullopt;
    const double retained = (1.0 - q.occupancy) + q.join * q.occupancy;
    const int j = open[k];
    for (int i = 0; i < inst.n; ++i)
      total += inst.weight(i, j) * at(inst.demand[i], s) * allocation(i, j) * retained;
  }
  return total;
}

std::optional<double> crisp_objective_slice(const Instance& inst, std::span<const int> open, Slice s) {
  return crisp_objective_slice(inst, logit_allocation(inst, open), open, s);
}

std::optional<double> crisp_objective_slice(const Instance& inst, const Solution& sol, Slice s) {
  return crisp_objective_slice(inst, sol.open(), s);
}

CapacityCheck capacity_feasible_slice(const Instance& inst, std::span<const int> open, Slice s) {
  const auto p = logit_allocation(inst, open);
  const auto agg = aggregate_demand(inst, p, open);
  CapacityCheck out;
  for (std::size_t k = 0; k < open.size(); ++k) {
    const int j = open[k];
    const double cap = at(inst.service[j], s) * (1.0 - at(inst.idle_min, s));
    const double excess = at(agg[k], s) - cap;
    if (excess > 0) {
      out.feasible = false;
      out.violations.push_back({j, excess});
    }
  }
  return out;
}

CapacityCheck capacity_feasible_slice(const Instance& inst, const Solution& sol, Slice s) {
  return capacity_feasible_slice(inst, sol.open(), s);
}

}  // namespace fqmbl
