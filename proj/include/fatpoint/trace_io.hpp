#pragma once

// JSON form of proof traces. The document is self-contained: every claim
// carries its system, its justification and, for degenerations, all four
// child systems, so a reader can re-check it without the search.

#include <string>

#include "fatpoint/prover.hpp"
#include <json.hpp>

namespace fatpoint {

inline constexpr const char* trace_format = "fatpoint-trace";
inline constexpr int trace_format_version = 1;

nlohmann::json to_json(const ProofTrace& t);
/// Throws std::runtime_error on a malformed document.
ProofTrace trace_from_json(const nlohmann::json& j);

std::string serialize_trace(const ProofTrace& t);
ProofTrace parse_trace(const std::string& text);

nlohmann::json system_json(const LinearSystem& s);
LinearSystem system_from_json(const nlohmann::json& j);

} // namespace fatpoint
