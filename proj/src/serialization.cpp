#include "fqmbl/serialization.hpp"

#include <fstream>
#include <stdexcept>

namespace fqmbl {

using nlohmann::json;

json context_to_json(const MaximinContext& ctx) {
  json doc;
  doc["id"] = ctx.id();
  doc["provenance"] = provenance_name(ctx.provenance);
  for (int i = 0; i < 3; ++i) {
    const ComponentBounds& b = ctx.bounds[static_cast<std::size_t>(i)];
    doc["z" + std::to_string(i + 1)] = {
        {"min", b.min_bound}, {"max", b.max_bound}, {"found", b.found}, {"degenerate", b.degenerate()}};
  }
  return doc;
}

MaximinContext context_from_json(const json& doc) {
  MaximinContext ctx;
  try {
    const std::string prov = doc.at("provenance").get<std::string>();
    if (prov == "oracle-exact")
      ctx.provenance = BoundProvenance::oracle_exact;
    else if (prov == "metaheuristic-estimated")
      ctx.provenance = BoundProvenance::metaheuristic_estimated;
    else
      throw std::runtime_error("context: unknown provenance \"" + prov + "\"");
    for (int i = 0; i < 3; ++i) {
      const json& z = doc.at("z" + std::to_string(i + 1));
      ctx.bounds[static_cast<std::size_t>(i)] = {z.at("min").get<double>(), z.at("max").get<double>(),
                                                 z.value("found", true)};
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("context: ") + e.what());
  }
  for (const auto& b : ctx.bounds)
    if (b.min_bound > b.max_bound) throw std::runtime_error("context: min bound exceeds max bound");
  if (doc.contains("id") && doc["id"].get<std::string>() != ctx.id())
    throw std::runtime_error("context: id does not match the bound values");
  return ctx;
}

json report_to_json(const SolverReport& r) {
  json facilities = json::array();
  for (int j : r.best) facilities.push_back(j + 1);
  return {{"algorithm", r.algorithm},
          {"objective", r.objective_label},
          {"seed", r.seed},
          {"facilities", facilities},
          {"value", r.best_fitness.value},
          {"feasible", r.best_fitness.feasible},
          {"violation", r.best_fitness.violation},
          {"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"termination", termination_name(r.termination)},
          {"elapsed_ms", r.elapsed_ms},
          {"trace", r.trace}};
}

json solve_result_to_json(const ProtocolResult& result, const std::string& instance_id, Algorithm algorithm,
                          std::uint64_t seed) {
  json bound_runs = json::array();
  for (const auto& r : result.bound_runs) bound_runs.push_back(report_to_json(r));
  return {{"instance", instance_id},
          {"algorithm", algorithm_name(algorithm)},
          {"seed", seed},
          {"objective", result.final_run.best_fitness.value},
          {"feasible", result.final_run.best_fitness.feasible},
          {"facilities", format_facilities(result.final_run.best)},
          {"bounds_id", result.context.id()},
          {"context", context_to_json(result.context)},
          {"bound_runs", bound_runs},
          {"final", report_to_json(result.final_run)},
          {"notes", result.notes},
          {"runtime_ms", result.total_ms}};
}

MaximinContext load_context(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  return context_from_json(doc.contains("context") ? doc["context"] : doc);
}

void write_json(const json& doc, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace fqmbl
