#ifndef FQMBL_MODEL_HPP
#define FQMBL_MODEL_HPP

#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fqmbl/instance.hpp"
#include "fqmbl/queueing.hpp"
#include "fqmbl/tri_fuzzy.hpp"

namespace fqmbl {

/// Logit (softmax) capture probabilities. Row i holds the share of node i's
/// demand going to each open column; closed columns are zero.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> logit_allocation(
    const Eigen::MatrixBase<Derived>& distance, std::span<const int> open,
    typename Derived::Scalar sensitivity) {
  using Scalar = typename Derived::Scalar;
  if (open.empty()) throw std::domain_error("logit_allocation: no open facility");
  const Eigen::Index n = distance.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> p =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, distance.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    // Shift by the nearest open distance so the largest exponent is 0.
    Scalar nearest = distance(i, open.front());
    for (int j : open) nearest = std::min(nearest, distance(i, j));
    Scalar total(0);
    for (int j : open) {
      const Scalar w = std::exp(-sensitivity * (distance(i, j) - nearest));
      p(i, j) = w;
      total += w;
    }
    for (int j : open) p(i, j) /= total;
  }
  return p;
}

Eigen::MatrixXd logit_allocation(const Instance& inst, std::span<const int> open);
Eigen::MatrixXd logit_allocation(const Instance& inst, const Solution& sol);

/// Fuzzy arrival rate at each open facility, in the order of `open`.
std::vector<TriFuzzyd> aggregate_demand(const Instance& inst, const Eigen::MatrixXd& allocation,
                                        std::span<const int> open);

struct SliceQueue {
  double occupancy = 0;  // lambda / mu at this slice
  std::optional<Mm1Metrics<double>> mm1;
  double join = 0;  // probability of joining a busy server
  bool stable() const { return mm1.has_value(); }
};

struct FacilityQueue {
  int node = -1;
  TriFuzzyd agg_demand;
  TriFuzzyd occupancy;  // agg_demand / service, componentwise and sorted
  std::array<SliceQueue, 3> slices;  // indexed by Slice
};

using QueueMetrics = std::vector<FacilityQueue>;

QueueMetrics queue_metrics(const Instance& inst, std::span<const int> open);
QueueMetrics queue_metrics(const Instance& inst, const Eigen::MatrixXd& allocation,
                           std::span<const int> open);

/// Queue-discounted captured benefit with every fuzzy parameter at one slice.
/// nullopt when some open facility is unstable at that slice.
std::optional<double> crisp_objective_slice(const Instance& inst, std::span<const int> open, Slice s);
std::optional<double> crisp_objective_slice(const Instance& inst, const Solution& sol, Slice s);
std::optional<double> crisp_objective_slice(const Instance& inst, const Eigen::MatrixXd& allocation,
                                            std::span<const int> open, Slice s);

struct CapacityViolation {
  int node;
  double excess;
};

struct CapacityCheck {
  bool feasible = true;
  std::vector<CapacityViolation> violations;
};

/// Crisp idleness constraint at one slice: aggregated demand at most mu (1 - beta).
CapacityCheck capacity_feasible_slice(const Instance& inst, std::span<const int> open, Slice s);
CapacityCheck capacity_feasible_slice(const Instance& inst, const Solution& sol, Slice s);

}  // namespace fqmbl

#endif  // FQMBL_MODEL_HPP
