#include "fqmbl/instances.hpp"

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fqmbl {

using nlohmann::json;

const char* const kTable1Hash = "4d88c4ccc5a8f459";

void GeneratorParams::validate() const {
  if (m_servers < 1 || m_servers >= n) throw std::invalid_argument("generator: requires 1 <= m < n");
  for (const auto* r : {&demand_lo_range, &service_lo_range, &distance_range})
    if (r->lo > r->hi) throw std::invalid_argument("generator: empty integer range");
  if (demand_lo_range.lo < 0) throw std::invalid_argument("generator: demand must be nonnegative");
  if (service_lo_range.lo < 1) throw std::invalid_argument("generator: service rates must be positive");
  if (distance_range.lo < 1) throw std::invalid_argument("generator: distances must be positive");
  for (const auto* o : {&demand_offsets, &service_offsets})
    if (!(o->first > 0 && o->second > o->first))
      throw std::invalid_argument("generator: offsets must be positive and increasing");
}

Instance generate_instance(const GeneratorParams& params) {
  params.validate();
  std::mt19937_64 rng(params.seed);
  auto draw = [&rng](IntRange r) { return static_cast<double>(std::uniform_int_distribution<int>(r.lo, r.hi)(rng)); };

  Instance inst;
  inst.n = params.n;
  inst.m_servers = params.m_servers;
  inst.idle_min = params.idle_min;
  inst.mql = params.mql;
  inst.gamma = params.gamma;
  inst.logit_sensitivity = params.logit_sensitivity;
  for (int i = 0; i < params.n; ++i) {
    const double lo = draw(params.demand_lo_range);
    inst.demand.emplace_back(lo, lo + params.demand_offsets.first, lo + params.demand_offsets.second);
  }
  for (int i = 0; i < params.n; ++i) {
    const double lo = draw(params.service_lo_range);
    inst.service.emplace_back(lo, lo + params.service_offsets.first, lo + params.service_offsets.second);
  }
  inst.distance = Eigen::MatrixXd::Zero(params.n, params.n);
  for (int i = 0; i < params.n; ++i)
    for (int j = i + 1; j < params.n; ++j) inst.distance(i, j) = inst.distance(j, i) = draw(params.distance_range);
  validate(inst);
  return inst;
}

namespace {

std::string num(double v) { return json(v).dump(); }

std::string triple(const TriFuzzyd& t) { return "[" + num(t.lo) + ", " + num(t.mid) + ", " + num(t.hi) + "]"; }

void write_matrix(std::ostringstream& os, const char* key, const Eigen::MatrixXd& m) {
  os << "  \"" << key << "\": [\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << "    [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << num(m(i, j));
    os << "]" << (i + 1 < m.rows() ? "," : "") << "\n";
  }
  os << "  ]";
}

void write_triples(std::ostringstream& os, const char* key, const std::vector<TriFuzzyd>& v) {
  os << "  \"" << key << "\": [\n";
  for (std::size_t i = 0; i < v.size(); ++i) os << "    " << triple(v[i]) << (i + 1 < v.size() ? "," : "") << "\n";
  os << "  ]";
}

[[noreturn]] void fail(const std::string& msg) { throw InstanceFormatError("instance: " + msg); }

const json& field(const json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) fail(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  return v.get<double>();
}

TriFuzzyd read_triple(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 3) fail(where + ": expected [lo, mid, hi]");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]"), number(v[2], where + "[2]")};
}

std::vector<TriFuzzyd> read_triples(const json& doc, const char* key, int n) {
  const json& arr = field(doc, key);
  if (!arr.is_array()) fail(std::string(key) + ": expected an array");
  std::vector<TriFuzzyd> out;
  for (int i = 0; i < n; ++i) {
    if (static_cast<std::size_t>(i) >= arr.size()) fail(std::string(key) + ": row " + std::to_string(i + 1) + " missing");
    out.push_back(read_triple(arr[static_cast<std::size_t>(i)], std::string(key) + " row " + std::to_string(i + 1)));
  }
  if (arr.size() != static_cast<std::size_t>(n)) fail(std::string(key) + ": expected " + std::to_string(n) + " rows");
  return out;
}

Eigen::MatrixXd read_matrix(const json& arr, const char* key, int n) {
  if (!arr.is_array()) fail(std::string(key) + ": expected an array of rows");
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    const std::string row = std::string(key) + " row " + std::to_string(i + 1);
    if (static_cast<std::size_t>(i) >= arr.size()) fail(row + " missing");
    const json& r = arr[static_cast<std::size_t>(i)];
    if (!r.is_array() || r.size() != static_cast<std::size_t>(n))
      fail(row + ": expected " + std::to_string(n) + " entries");
    for (int j = 0; j < n; ++j) m(i, j) = number(r[static_cast<std::size_t>(j)], row + " column " + std::to_string(j + 1));
  }
  if (arr.size() != static_cast<std::size_t>(n)) fail(std::string(key) + ": expected " + std::to_string(n) + " rows");
  return m;
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"n\": " << inst.n << ",\n";
  os << "  \"m_servers\": " << inst.m_servers << ",\n";
  os << "  \"mql\": " << num(inst.mql) << ",\n";
  os << "  \"gamma\": " << num(inst.gamma) << ",\n";
  os << "  \"logit_sensitivity\": " << num(inst.logit_sensitivity) << ",\n";
  os << "  \"idle_min\": " << triple(inst.idle_min) << ",\n";
  write_triples(os, "demand", inst.demand);
  os << ",\n";
  write_triples(os, "service", inst.service);
  os << ",\n";
  write_matrix(os, "distance", inst.distance);
  if (inst.benefit_weight) {
    os << ",\n";
    write_matrix(os, "benefit_weight", *inst.benefit_weight);
  }
  os << "\n}\n";
  return os.str();
}

Instance instance_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = std::min(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte ? byte - 1 : 0), '\n');
    fail("malformed JSON at line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");

  Instance inst;
  const json& n = field(doc, "n");
  const json& m = field(doc, "m_servers");
  if (!n.is_number_integer() || !m.is_number_integer()) fail("n and m_servers must be integers");
  inst.n = n.get<int>();
  inst.m_servers = m.get<int>();
  if (inst.n < 2) fail("n must be at least 2");
  inst.mql = number(field(doc, "mql"), "mql");
  inst.gamma = number(field(doc, "gamma"), "gamma");
  inst.logit_sensitivity = number(field(doc, "logit_sensitivity"), "logit_sensitivity");
  inst.idle_min = read_triple(field(doc, "idle_min"), "idle_min");
  inst.demand = read_triples(doc, "demand", inst.n);
  inst.service = read_triples(doc, "service", inst.n);
  inst.distance = read_matrix(field(doc, "distance"), "distance", inst.n);
  if (doc.contains("benefit_weight")) inst.benefit_weight = read_matrix(doc["benefit_weight"], "benefit_weight", inst.n);
  try {
    validate(inst);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return inst;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceFormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(inst);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Instance load_instance(const std::filesystem::path& path) {
  try {
    return instance_from_json(read_file(path));
  } catch (const InstanceFormatError& e) {
    throw InstanceFormatError(path.string() + ": " + e.what());
  }
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::filesystem::path default_table1_path() {
  if (const char* dir = std::getenv("FQMBL_DATA_DIR")) return std::filesystem::path(dir) / "table1.json";
  return std::filesystem::path(FQMBL_DATA_DIR) / "table1.json";
}

Instance load_table1(const std::filesystem::path& path) {
  const std::string bytes = read_file(path);
  const std::string hash = content_hash(bytes);
  if (hash != kTable1Hash)
    throw InstanceFormatError("table1 fixture checksum mismatch: expected " + std::string(kTable1Hash) + ", got " + hash);
  return instance_from_json(bytes);
}

}  // namespace fqmbl
