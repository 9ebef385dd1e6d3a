#ifndef FQMBL_SERIALIZATION_HPP
#define FQMBL_SERIALIZATION_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fqmbl/fitness.hpp"
#include "fqmbl/fuzzy_eval.hpp"
#include "fqmbl/protocol.hpp"

namespace fqmbl {

nlohmann::json context_to_json(const MaximinContext& ctx);
MaximinContext context_from_json(const nlohmann::json& doc);

nlohmann::json report_to_json(const SolverReport& report);

/// Result file written by `solve`.
nlohmann::json solve_result_to_json(const ProtocolResult& result, const std::string& instance_id,
                                    Algorithm algorithm, std::uint64_t seed);

/// Reads a context from a standalone context file or from a solve result file.
MaximinContext load_context(const std::filesystem::path& path);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace fqmbl

#endif  // FQMBL_SERIALIZATION_HPP
