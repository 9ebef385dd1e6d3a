#ifndef FQMBL_INSTANCES_HPP
#define FQMBL_INSTANCES_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>

#include "fqmbl/instance.hpp"

namespace fqmbl {

struct IntRange {
  int lo;
  int hi;
};

/// Random instance recipe. Each fuzzy rate is drawn as an integer base `lo`
/// with mid = lo + offsets.first and hi = lo + offsets.second.
struct GeneratorParams {
  int n = 20;
  int m_servers = 5;
  IntRange demand_lo_range{4, 80};
  std::pair<double, double> demand_offsets{50, 100};
  IntRange service_lo_range{144, 190};
  std::pair<double, double> service_offsets{50, 100};
  IntRange distance_range{1, 35};
  TriFuzzyd idle_min{0.1, 0.15, 0.2};
  double mql = 25;
  double gamma = 0.5;
  double logit_sensitivity = 0.5;
  std::uint64_t seed = 1;

  void validate() const;
};

Instance generate_instance(const GeneratorParams& params);

class InstanceFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical text form: one JSON document, fuzzy triples as [lo, mid, hi],
/// one matrix row per line.
std::string instance_to_json(const Instance& inst);
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& inst, const std::filesystem::path& path);
Instance load_instance(const std::filesystem::path& path);

/// FNV-1a 64 of a byte string, as 16 lowercase hex digits.
std::string content_hash(const std::string& bytes);

/// Recorded hash of data/table1.json.
extern const char* const kTable1Hash;

std::filesystem::path default_table1_path();

/// The 20-node benchmark network (M = 5). Throws InstanceFormatError when the
/// fixture's content hash does not match kTable1Hash.
Instance load_table1(const std::filesystem::path& path = default_table1_path());

}  // namespace fqmbl

#endif  // FQMBL_INSTANCES_HPP
