#ifndef FQMBL_INSTANCE_HPP
#define FQMBL_INSTANCE_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fqmbl/tri_fuzzy.hpp"

namespace fqmbl {

/// Problem datum. Node indices are 0-based in memory; files and reports
/// print them 1-based.
struct Instance {
  int n = 0;
  int m_servers = 0;
  Eigen::MatrixXd distance;
  std::vector<TriFuzzyd> demand;   // customers per unit time at each node
  std::vector<TriFuzzyd> service;  // service rate of a server placed at each node
  TriFuzzyd idle_min{0.1, 0.15, 0.2};
  double mql = 25.0;
  double gamma = 0.5;
  double logit_sensitivity = 0.5;
  std::optional<Eigen::MatrixXd> benefit_weight;

  double weight(int i, int j) const { return benefit_weight ? (*benefit_weight)(i, j) : 1.0; }

  bool operator==(const Instance& other) const;
};

/// Throws std::invalid_argument describing the first violated invariant.
void validate(const Instance& inst);

/// A set of exactly m_servers distinct open nodes, kept sorted ascending.
class Solution {
 public:
  Solution() = default;
  /// Throws std::invalid_argument when the set is not a valid location set for `inst`.
  Solution(const Instance& inst, std::vector<int> open);

  std::span<const int> open() const { return open_; }
  std::size_t size() const { return open_.size(); }
  bool contains(int node) const;

  /// 1-based, ";"-joined, ascending.
  std::string to_string() const;

  friend bool operator==(const Solution&, const Solution&) = default;
  friend auto operator<=>(const Solution&, const Solution&) = default;

 private:
  std::vector<int> open_;
};

std::string format_facilities(std::span<const int> open);

}  // namespace fqmbl

#endif  // FQMBL_INSTANCE_HPP
