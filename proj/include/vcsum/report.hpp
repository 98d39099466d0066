#pragma once

// JSON and CSV renderings of library results.
//
// Field order is fixed (ordered_json), and content_digest is the FNV-1a hash
// of the compact dump of every field except timing_ms and content_digest.

#include <optional>
#include <string>

#include "json.hpp"
#include "vcsum/clp_slice.hpp"
#include "vcsum/theorem_verifier.hpp"

namespace vcsum::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "vcsum-report/1";

const char* tool_version();

/// Versioned JSON Schema for verification reports.
Json schema();

Json verification_json(const VerificationReport& r, const std::string& command_echo,
                       std::optional<double> timing_ms = std::nullopt);
std::string verification_csv(const VerificationReport& r);
std::string verification_text(const VerificationReport& r);

/// Rebuilds the report fields that a replay compares.
VerificationReport verification_from_json(const Json& j);

Json evidence_json(const std::vector<EvidenceRow>& rows, const std::string& command_echo);
std::string evidence_csv(const std::vector<EvidenceRow>& rows);
std::string evidence_text(const std::vector<EvidenceRow>& rows);

Json counterexample_json(const CounterexampleReport& r, const std::string& command_echo);

Json family_json(const SetFamily& a);

/// Starts a report object with tool_version and command_echo.
Json envelope(const std::string& command_echo);

/// Hash over all fields except timing_ms and content_digest.
std::string compute_digest(const Json& j);

/// Appends content_digest as the last field.
void seal(Json& j);

/// Pretty-printed JSON with a trailing newline.
std::string dump(const Json& j);

}  // namespace vcsum::report
