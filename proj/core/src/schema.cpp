#include "fbns/schema.hpp"

namespace fbns {

namespace {

bool type_matches(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  return false;
}

void check(const json& value, const json& schema, const std::string& path,
           std::vector<std::string>& out) {
  const std::string where = path.empty() ? "$" : path;
  if (schema.contains("type")) {
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(value, t.get<std::string>());
    } else {
      for (const json& alt : t) {
        if (type_matches(value, alt.get<std::string>())) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) {
      out.push_back(where + ": expected type " + t.dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const json& alt : schema.at("enum")) {
      if (value == alt) {
        ok = true;
        break;
      }
    }
    if (!ok) out.push_back(where + ": not one of " + schema.at("enum").dump());
  }
  if (value.is_number()) {
    const double x = value.get<double>();
    if (schema.contains("minimum") &&
        x < schema.at("minimum").get<double>()) {
      out.push_back(where + ": below minimum " + schema.at("minimum").dump());
    }
    if (schema.contains("maximum") &&
        x > schema.at("maximum").get<double>()) {
      out.push_back(where + ": above maximum " + schema.at("maximum").dump());
    }
    if (schema.contains("exclusiveMinimum") &&
        x <= schema.at("exclusiveMinimum").get<double>()) {
      out.push_back(where + ": must exceed " +
                    schema.at("exclusiveMinimum").dump());
    }
    if (schema.contains("exclusiveMaximum") &&
        x >= schema.at("exclusiveMaximum").get<double>()) {
      out.push_back(where + ": must be below " +
                    schema.at("exclusiveMaximum").dump());
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const json& key : schema.at("required")) {
        if (!value.contains(key.get<std::string>())) {
          out.push_back(where + ": missing required key " + key.dump());
        }
      }
    }
    const json props = schema.value("properties", json::object());
    if (schema.value("additionalProperties", true) == json(false)) {
      for (const auto& [key, sub] : value.items()) {
        (void)sub;
        if (!props.contains(key)) {
          out.push_back(where + ": unexpected key \"" + key + "\"");
        }
      }
    }
    for (const auto& [key, sub_schema] : props.items()) {
      if (value.contains(key)) {
        check(value.at(key), sub_schema, where + "." + key, out);
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") &&
        value.size() < schema.at("minItems").get<std::size_t>()) {
      out.push_back(where + ": fewer than " + schema.at("minItems").dump() +
                    " items");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        check(value.at(i), schema.at("items"),
              where + "[" + std::to_string(i) + "]", out);
      }
    }
  }
}

}  // namespace

std::vector<std::string> schema_violations(const json& value,
                                           const json& schema) {
  std::vector<std::string> out;
  check(value, schema, "", out);
  return out;
}

bool schema_valid(const json& value, const json& schema,
                  std::string* first_error) {
  const auto violations = schema_violations(value, schema);
  if (violations.empty()) return true;
  if (first_error != nullptr) *first_error = violations.front();
  return false;
}

}  // namespace fbns
