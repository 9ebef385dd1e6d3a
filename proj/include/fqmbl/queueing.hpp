#ifndef FQMBL_QUEUEING_HPP
#define FQMBL_QUEUEING_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace fqmbl {

template <typename Scalar>
struct Mm1Metrics {
  Scalar idle_prob;     // P0
  Scalar queue_length;  // Lq, customers waiting (not in service)
};

/// Steady-state M/M/1 idle probability and expected waiting-line length.
/// Returns nullopt when lambda >= mu (no steady state).
template <typename Scalar>
std::optional<Mm1Metrics<Scalar>> mm1_metrics(Scalar lambda, Scalar mu) {
  if (!(mu > Scalar(0))) throw std::domain_error("mm1_metrics: service rate must be positive");
  if (lambda < Scalar(0)) throw std::domain_error("mm1_metrics: negative arrival rate");
  if (lambda >= mu) return std::nullopt;
  const Scalar rho = lambda / mu;
  return Mm1Metrics<Scalar>{Scalar(1) - rho, lambda * lambda / (mu * (mu - lambda))};
}

/// Linear balking rule: certain to join an empty queue, never joins once the
/// expected queue reaches the maximum queuing length.
template <typename Scalar>
Scalar join_probability(Scalar queue_length, Scalar mql) {
  return std::clamp(Scalar(1) - queue_length / mql, Scalar(0), Scalar(1));
}

}  // namespace fqmbl

#endif  // FQMBL_QUEUEING_HPP
