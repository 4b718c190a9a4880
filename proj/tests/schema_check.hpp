#pragma once

// Just enough of JSON Schema draft-07 to enforce the report schema in tests:
// type, enum, required, properties, additionalProperties: false, items,
// minItems, minimum.

#include <string>

#include <json.hpp>

namespace testutil {

inline bool type_matches(const nlohmann::json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "boolean") return v.is_boolean();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "null") return v.is_null();
  return false;
}

inline bool validate_schema(const nlohmann::json& value, const nlohmann::json& schema,
                            std::string* error, const std::string& path = "$") {
  const auto fail = [&](const std::string& why) {
    if (error) *error = path + ": " + why;
    return false;
  };

  if (schema.contains("type") && !type_matches(value, schema.at("type").get<std::string>()))
    return fail("expected type " + schema.at("type").get<std::string>());

  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& cand : schema.at("enum"))
      if (cand == value) found = true;
    if (!found) return fail("value not in enum");
  }

  if (schema.contains("minimum") && value.is_number() &&
      value.get<double>() < schema.at("minimum").get<double>())
    return fail("below minimum");

  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema.at("required"))
        if (!value.contains(key.get<std::string>()))
          return fail("missing required key '" + key.get<std::string>() + "'");
    const bool sealed = schema.contains("additionalProperties") &&
                        schema.at("additionalProperties").is_boolean() &&
                        !schema.at("additionalProperties").get<bool>();
    for (const auto& [key, sub] : value.items()) {
      const bool declared = schema.contains("properties") && schema.at("properties").contains(key);
      if (!declared) {
        if (sealed) return fail("unexpected key '" + key + "'");
        continue;
      }
      if (!validate_schema(sub, schema.at("properties").at(key), error, path + "." + key))
        return false;
    }
  }

  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema.at("minItems").get<std::size_t>())
      return fail("fewer than minItems elements");
    if (schema.contains("items")) {
      std::size_t i = 0;
      for (const auto& el : value) {
        if (!validate_schema(el, schema.at("items"), error, path + "[" + std::to_string(i) + "]"))
          return false;
        ++i;
      }
    }
  }

  return true;
}

}  // namespace testutil
