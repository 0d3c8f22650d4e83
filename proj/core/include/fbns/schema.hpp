#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fbns {

using json = nlohmann::json;

// Validator for the JSON-schema subset used by the shipped schema files:
// type (string or list), properties, required, additionalProperties
// (boolean), items, enum, minimum, maximum, exclusiveMinimum,
// exclusiveMaximum, minItems.  Returns "path: problem" strings, empty when
// the value conforms.
std::vector<std::string> schema_violations(const json& value,
                                           const json& schema);

bool schema_valid(const json& value, const json& schema,
                  std::string* first_error = nullptr);

}  // namespace fbns
