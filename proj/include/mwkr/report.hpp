#pragma once

// Machine-readable run reports and curve export.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "mwkr/compactness.hpp"
#include "mwkr/scenario.hpp"

namespace mwkr {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchemaId = "mwkr-report/1";

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, error };
std::string_view to_string(Status status);

/// Report skeleton: schema id, task, status, scenario echo and provenance.
Json make_report(const Scenario& scenario, Status status);

/// Adds {"code", "message"} and sets status to error.
void attach_error(Json& report, const Error& error);
void attach_error(Json& report, const std::string& code, const std::string& message);

/// Wall-clock seconds per phase; only written when requested so reports stay
/// byte-identical across runs.
void attach_timings(Json& report, const std::map<std::string, double>& seconds);

/// Non-finite doubles become the strings "inf", "-inf" or "nan".
Json number(double x);
/// [[scale, value], ...].
Json curve_json(const Curve& curve);
/// "scale,value" header plus one row per point, shortest round-trip digits.
std::string curve_csv(const Curve& curve);

/// The published JSON Schema of a report (also shipped as docs/report.schema.json).
const std::string& report_schema_text();
const nlohmann::json& report_schema();

/// Checks a document against a JSON Schema using the keywords type, const,
/// enum, required, properties, additionalProperties, items and minimum.
/// Returns one message per violation, each prefixed with its JSON pointer.
std::vector<std::string> validate_json(const nlohmann::json& doc, const nlohmann::json& schema);
std::vector<std::string> validate_report(const nlohmann::json& doc);

}  // namespace mwkr
