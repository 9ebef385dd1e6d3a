#include "fqmbl/instance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fqmbl {

namespace {

void check_triple(const TriFuzzyd& t, const std::string& what) {
  if (!std::isfinite(t.lo) || !std::isfinite(t.mid) || !std::isfinite(t.hi))
    throw std::invalid_argument(what + ": non-finite component");
  if (!t.ordered()) {
    std::ostringstream os;
    os << what << ": components not ordered lo <= mid <= hi " << t;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

bool Instance::operator==(const Instance& o) const {
  if (n != o.n || m_servers != o.m_servers || mql != o.mql || gamma != o.gamma ||
      logit_sensitivity != o.logit_sensitivity || idle_min != o.idle_min || demand != o.demand ||
      service != o.service)
    return false;
  if (distance.rows() != o.distance.rows() || distance.cols() != o.distance.cols() ||
      distance != o.distance)
    return false;
  if (benefit_weight.has_value() != o.benefit_weight.has_value()) return false;
  if (benefit_weight) {
    if (benefit_weight->rows() != o.benefit_weight->rows() ||
        benefit_weight->cols() != o.benefit_weight->cols())
      return false;
    return *benefit_weight == *o.benefit_weight;
  }
  return true;
}

void validate(const Instance& inst) {
  if (inst.n < 2) throw std::invalid_argument("instance: n must be at least 2");
  if (inst.m_servers < 1 || inst.m_servers >= inst.n)
    throw std::invalid_argument("instance: m_servers must satisfy 1 <= m_servers < n");
  if (!(inst.mql > 0)) throw std::invalid_argument("instance: mql must be positive");
  if (!(inst.gamma >= 0 && inst.gamma <= 1)) throw std::invalid_argument("instance: gamma must lie in [0, 1]");
  if (!(inst.logit_sensitivity > 0))
    throw std::invalid_argument("instance: logit_sensitivity must be positive");
  check_triple(inst.idle_min, "idle_min");
  if (inst.idle_min.lo < 0 || inst.idle_min.hi > 1)
    throw std::invalid_argument("idle_min: probabilities must lie in [0, 1]");
  const auto n = static_cast<std::size_t>(inst.n);
  if (inst.demand.size() != n) throw std::invalid_argument("demand: expected n triples");
  if (inst.service.size() != n) throw std::invalid_argument("service: expected n triples");
  for (std::size_t i = 0; i < n; ++i) {
    check_triple(inst.demand[i], "demand[" + std::to_string(i + 1) + "]");
    if (inst.demand[i].lo < 0) throw std::invalid_argument("demand[" + std::to_string(i + 1) + "]: negative rate");
    check_triple(inst.service[i], "service[" + std::to_string(i + 1) + "]");
    if (!(inst.service[i].lo > 0))
      throw std::invalid_argument("service[" + std::to_string(i + 1) + "]: rates must be positive");
  }
  if (inst.distance.rows() != inst.n || inst.distance.cols() != inst.n)
    throw std::invalid_argument("distance: expected an n x n matrix");
  for (int i = 0; i < inst.n; ++i) {
    if (inst.distance(i, i) != 0)
      throw std::invalid_argument("distance: nonzero diagonal at node " + std::to_string(i + 1));
    for (int j = i + 1; j < inst.n; ++j) {
      const double d = inst.distance(i, j);
      if (!(d > 0) || !std::isfinite(d))
        throw std::invalid_argument("distance(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                    "): off-diagonal entries must be positive");
      if (d != inst.distance(j, i))
        throw std::invalid_argument("distance(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                    "): matrix is not symmetric");
    }
  }
  if (inst.benefit_weight) {
    const auto& w = *inst.benefit_weight;
    if (w.rows() != inst.n || w.cols() != inst.n)
      throw std::invalid_argument("benefit_weight: expected an n x n matrix");
    if ((w.array() < 0).any() || !w.allFinite())
      throw std::invalid_argument("benefit_weight: entries must be finite and nonnegative");
  }
}

Solution::Solution(const Instance& inst, std::vector<int> open) : open_(std::move(open)) {
  std::sort(open_.begin(), open_.end());
  if (std::adjacent_find(open_.begin(), open_.end()) != open_.end())
    throw std::invalid_argument("solution: duplicate facility index");
  if (open_.size() != static_cast<std::size_t>(inst.m_servers))
    throw std::invalid_argument("solution: expected exactly " + std::to_string(inst.m_servers) +
                                " facilities, got " + std::to_string(open_.size()));
  if (!open_.empty() && (open_.front() < 0 || open_.back() >= inst.n))
    throw std::invalid_argument("solution: facility index out of range");
}

bool Solution::contains(int node) const { return std::binary_search(open_.begin(), open_.end(), node); }

std::string Solution::to_string() const { return format_facilities(open_); }

std::string format_facilities(std::span<const int> open) {
  std::vector<int> s(open.begin(), open.end());
  std::sort(s.begin(), s.end());
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ';';
    out += std::to_string(s[k] + 1);
  }
  return out;
}

}  // namespace fqmbl
