#include "mwkr/report.hpp"

#include <cmath>
#include <sstream>

#include "mwkr/field_io.hpp"

namespace mwkr {

namespace {

const char* const kSchemaText = R"json({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "mwkr-report/1",
  "title": "mwkr run report",
  "type": "object",
  "required": ["schema", "task", "status", "scenario", "provenance", "results"],
  "additionalProperties": false,
  "properties": {
    "schema": {"const": "mwkr-report/1"},
    "task": {
      "enum": ["ap-constant", "john", "norm", "moduli", "net", "certify", "necessity", "verify-lemmas"]
    },
    "status": {"enum": ["pass", "fail", "error"]},
    "scenario": {
      "type": "object",
      "required": ["grid", "weight", "measure", "exponent", "family", "task", "params", "seed"],
      "additionalProperties": false,
      "properties": {
        "grid": {
          "type": "object",
          "required": ["n", "L", "N"],
          "additionalProperties": false,
          "properties": {
            "n": {"enum": [1, 2]},
            "L": {"type": "number", "minimum": 0},
            "N": {"type": "integer", "minimum": 8}
          }
        },
        "weight": {
          "type": "object",
          "required": ["type", "dim"],
          "properties": {
            "type": {"enum": ["identity", "constant", "power", "file"]},
            "dim": {"type": "integer", "minimum": 1}
          }
        },
        "measure": {
          "type": "object",
          "required": ["type"],
          "properties": {"type": {"enum": ["lebesgue", "quadratic", "file"]}}
        },
        "exponent": {
          "type": "object",
          "required": ["type"],
          "properties": {"type": {"enum": ["constant", "step", "file"]}}
        },
        "family": {
          "type": "object",
          "required": ["type", "dim"],
          "properties": {
            "type": {"enum": ["gaussian_bumps", "zero", "constant", "files"]},
            "dim": {"type": "integer", "minimum": 1}
          }
        },
        "task": {"type": "string"},
        "params": {"type": "object"},
        "seed": {"type": "integer", "minimum": 0}
      }
    },
    "provenance": {
      "type": "object",
      "required": ["seed", "version", "grid"],
      "additionalProperties": false,
      "properties": {
        "seed": {"type": "integer", "minimum": 0},
        "version": {"type": "string"},
        "grid": {
          "type": "object",
          "required": ["n", "L", "N", "h"],
          "additionalProperties": false,
          "properties": {
            "n": {"type": "integer"},
            "L": {"type": "number"},
            "N": {"type": "integer"},
            "h": {"type": "number"}
          }
        }
      }
    },
    "results": {"type": "object"},
    "error": {
      "type": "object",
      "required": ["code", "message"],
      "additionalProperties": false,
      "properties": {
        "code": {"type": "string"},
        "message": {"type": "string"}
      }
    },
    "timings": {
      "type": "object",
      "additionalProperties": {"type": "number", "minimum": 0}
    }
  }
}
)json";

bool has_type(const nlohmann::json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  if (t == "integer") return v.is_number_integer() || (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>());
  if (t == "number") return v.is_number();
  return false;
}

void validate_at(const nlohmann::json& v, const nlohmann::json& schema, const std::string& where,
                 std::vector<std::string>& out) {
  const std::string at = where.empty() ? "/" : where;
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = has_type(v, t.get<std::string>());
    } else {
      for (const auto& x : t) ok = ok || has_type(v, x.get<std::string>());
    }
    if (!ok) {
      out.push_back(at + ": expected type " + t.dump());
      return;
    }
  }
  if (schema.contains("const") && v != schema["const"]) out.push_back(at + ": expected " + schema["const"].dump());
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& e : schema["enum"]) found = found || e == v;
    if (!found) out.push_back(at + ": value " + v.dump() + " not in " + schema["enum"].dump());
  }
  if (schema.contains("minimum") && v.is_number() && v.get<double>() < schema["minimum"].get<double>())
    out.push_back(at + ": below minimum " + schema["minimum"].dump());
  if (v.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!v.contains(k.get<std::string>())) out.push_back(at + ": missing required '" + k.get<std::string>() + "'");
    const nlohmann::json props = schema.value("properties", nlohmann::json::object());
    for (const auto& [key, value] : v.items()) {
      const std::string child = where + "/" + key;
      if (props.contains(key)) {
        validate_at(value, props[key], child, out);
      } else if (schema.contains("additionalProperties")) {
        const auto& extra = schema["additionalProperties"];
        if (extra.is_boolean()) {
          if (!extra.get<bool>()) out.push_back(child + ": unexpected property");
        } else {
          validate_at(value, extra, child, out);
        }
      }
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (std::size_t i = 0; i < v.size(); ++i) validate_at(v[i], schema["items"], where + "/" + std::to_string(i), out);
}

}  // namespace

std::string_view to_string(Status status) {
  switch (status) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
  }
  return "error";
}

Json make_report(const Scenario& scenario, Status status) {
  Json r;
  r["schema"] = kReportSchemaId;
  r["task"] = scenario.task;
  r["status"] = to_string(status);
  r["scenario"] = scenario_to_json(scenario);
  const double h = 2.0 * scenario.grid.half_width / scenario.grid.points;
  r["provenance"] = {{"seed", scenario.seed},
                     {"version", kVersion},
                     {"grid", {{"n", scenario.grid.n}, {"L", scenario.grid.half_width}, {"N", scenario.grid.points}, {"h", h}}}};
  r["results"] = Json::object();
  return r;
}

void attach_error(Json& report, const std::string& code, const std::string& message) {
  report["status"] = "error";
  report["error"] = {{"code", code}, {"message", message}};
}

void attach_error(Json& report, const Error& error) {
  attach_error(report, std::string(to_string(error.code())), error.what());
}

void attach_timings(Json& report, const std::map<std::string, double>& seconds) {
  Json t = Json::object();
  for (const auto& [k, v] : seconds) t[k] = v;
  report["timings"] = t;
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

Json curve_json(const Curve& curve) {
  Json out = Json::array();
  for (const auto& [s, v] : curve) out.push_back(Json::array({number(s), number(v)}));
  return out;
}

std::string curve_csv(const Curve& curve) {
  std::ostringstream os;
  os << "scale,value\n";
  for (const auto& [s, v] : curve) os << format_double(s) << ',' << format_double(v) << '\n';
  return os.str();
}

const std::string& report_schema_text() {
  static const std::string text = kSchemaText;
  return text;
}

const nlohmann::json& report_schema() {
  static const nlohmann::json schema = nlohmann::json::parse(report_schema_text());
  return schema;
}

std::vector<std::string> validate_json(const nlohmann::json& doc, const nlohmann::json& schema) {
  std::vector<std::string> out;
  validate_at(doc, schema, "", out);
  return out;
}

std::vector<std::string> validate_report(const nlohmann::json& doc) { return validate_json(doc, report_schema()); }

}  // namespace mwkr
