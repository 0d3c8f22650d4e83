#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "fbns/config.hpp"
#include "fbns/io.hpp"
#include "fbns/schema.hpp"

using namespace fbns;

namespace {

json load_schema(const std::string& name) {
  return read_json_file(std::string(FBNS_SCHEMA_DIR) + "/" + name);
}

bool has_violation(const std::vector<std::string>& violations,
                   const std::string& needle) {
  for (const auto& v : violations) {
    if (v.find(needle) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("type checks cover the json primitive kinds") {
  json schema = {{"type", "integer"}};
  CHECK(schema_valid(json(3), schema));
  CHECK(!schema_valid(json(3.5), schema));
  CHECK(!schema_valid(json("3"), schema));

  schema["type"] = "number";
  CHECK(schema_valid(json(3), schema));
  CHECK(schema_valid(json(3.5), schema));
  CHECK(!schema_valid(json(true), schema));

  schema["type"] = "string";
  CHECK(schema_valid(json("x"), schema));
  CHECK(!schema_valid(json(1), schema));

  schema["type"] = json::array({"number", "string"});
  CHECK(schema_valid(json(1.5), schema));
  CHECK(schema_valid(json("y"), schema));
  CHECK(!schema_valid(json(nullptr), schema));
}

TEST_CASE("numeric bounds and enums are enforced") {
  json schema = {{"type", "number"}, {"minimum", 0.0}, {"exclusiveMaximum", 1.0}};
  CHECK(schema_valid(json(0.0), schema));
  CHECK(schema_valid(json(0.5), schema));
  CHECK(!schema_valid(json(1.0), schema));
  CHECK(!schema_valid(json(-0.1), schema));

  json ex = {{"type", "number"}, {"exclusiveMinimum", 0.0}, {"maximum", 2.0}};
  CHECK(!schema_valid(json(0.0), ex));
  CHECK(schema_valid(json(2.0), ex));

  json en = {{"enum", {"fixed", "sweep"}}};
  CHECK(schema_valid(json("fixed"), en));
  std::string err;
  CHECK(!schema_valid(json("spray"), en, &err));
  CHECK(err.find("not one of") != std::string::npos);
}

TEST_CASE("object rules report paths for nested problems") {
  json schema = {
      {"type", "object"},
      {"required", {"solve"}},
      {"additionalProperties", false},
      {"properties",
       {{"solve",
         {{"type", "object"},
          {"additionalProperties", false},
          {"properties",
           {{"k_max", {{"type", "integer"}, {"minimum", 1}}}}}}}}}};

  const json good = {{"solve", {{"k_max", 4}}}};
  CHECK(schema_violations(good, schema).empty());

  const json missing = json::object();
  CHECK(has_violation(schema_violations(missing, schema), "solve"));

  const json extra = {{"solve", {{"k_max", 4}}}, {"bogus", 1}};
  CHECK(has_violation(schema_violations(extra, schema), "bogus"));

  const json nested = {{"solve", {{"k_max", 0}}}};
  const auto violations = schema_violations(nested, schema);
  REQUIRE(!violations.empty());
  CHECK(has_violation(violations, "$.solve.k_max"));

  const json typo = {{"solve", {{"kmax", 4}}}};
  CHECK(has_violation(schema_violations(typo, schema), "unexpected key"));
}

TEST_CASE("array rules enforce length and item schemas") {
  json schema = {{"type", "array"},
                 {"minItems", 1},
                 {"items", {{"type", "number"}, {"minimum", 0.0}}}};
  CHECK(schema_valid(json::array({1.0, 2.0}), schema));
  CHECK(!schema_valid(json::array(), schema));
  const auto violations =
      schema_violations(json::array({1.0, -2.0}), schema);
  CHECK(has_violation(violations, "$[1]"));
}

TEST_CASE("the shipped experiment schema accepts generated configurations") {
  const auto schema = load_schema("experiment-config.v1.json");
  for (const std::string command :
       {"simulate", "verify-hs", "check-params", "picard-study",
        "convergence-study", "energy-audit", "fbm-selftest"}) {
    ExperimentConfig c;
    c.command = command;
    if (command == "energy-audit") c.solve.hurst = 0.9;
    c.validate();
    const auto doc = experiment_config_to_json(c);
    const auto violations = schema_violations(doc, schema);
    CAPTURE(command);
    CAPTURE(violations.empty() ? std::string() : violations.front());
    CHECK(violations.empty());
  }

  // The schema rejects the classic failure modes.
  ExperimentConfig base;
  base.command = "simulate";
  json bad = experiment_config_to_json(base);
  bad["solve"]["kmax"] = 4;
  CHECK(!schema_valid(bad, schema));
  bad = experiment_config_to_json(base);
  bad["solve"]["hurst"] = 1.5;
  CHECK(!schema_valid(bad, schema));
  bad = experiment_config_to_json(base);
  bad["command"] = "meditate";
  CHECK(!schema_valid(bad, schema));
  bad = experiment_config_to_json(base);
  bad.erase("command");
  CHECK(!schema_valid(bad, schema));
}

TEST_CASE("the shipped manifest schema accepts a minimal manifest") {
  const auto schema = load_schema("run-manifest.v1.json");
  ExperimentConfig c;
  c.command = "simulate";
  json manifest;
  manifest["format"] = "run-manifest";
  manifest["schema_version"] = 1;
  manifest["command"] = "simulate";
  manifest["code_version"] = "0.0.0";
  manifest["config"] = experiment_config_to_json(c);
  manifest["outputs"] = json::array(
      {{{"file", "trajectory.csv"}, {"sha256", std::string(64, 'a')}}});
  manifest["status"] = "pass";
  manifest["reason_codes"] = json::array();
  const auto violations = schema_violations(manifest, schema);
  CAPTURE(violations.empty() ? std::string() : violations.front());
  CHECK(violations.empty());

  json bad = manifest;
  bad["format"] = "run-log";
  CHECK(!schema_valid(bad, schema));
  bad = manifest;
  bad.erase("outputs");
  CHECK(!schema_valid(bad, schema));
  bad = manifest;
  bad["status"] = "maybe";
  CHECK(!schema_valid(bad, schema));
  bad = manifest;
  bad["outputs"][0].erase("sha256");
  CHECK(!schema_valid(bad, schema));
}
