#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace outline_energy::jsonschema {

/// Validator for the JSON Schema subset the shipped schemas use: type, enum,
/// properties, required, additionalProperties (boolean), items,
/// minItems/maxItems, minimum/maximum, exclusiveMinimum/exclusiveMaximum and
/// local "#/..." $refs. Collects one message per violation; empty means valid.
inline void validate_into(const nlohmann::json& root, const nlohmann::json& schema,
                          const nlohmann::json& value, const std::string& path,
                          std::vector<std::string>& errors)
{
    using nlohmann::json;

    if (schema.contains("$ref")) {
        const std::string& ref = schema.at("$ref").get_ref<const std::string&>();
        if (ref.rfind("#", 0) != 0) {
            errors.push_back(path + ": unsupported external $ref \"" + ref + "\"");
            return;
        }
        validate_into(root, root.at(json::json_pointer(ref.substr(1))), value, path, errors);
        return;
    }

    if (schema.contains("type")) {
        const std::string& type = schema.at("type").get_ref<const std::string&>();
        bool ok = true;
        if (type == "object") ok = value.is_object();
        else if (type == "array") ok = value.is_array();
        else if (type == "string") ok = value.is_string();
        else if (type == "boolean") ok = value.is_boolean();
        else if (type == "integer") ok = value.is_number_integer();
        else if (type == "number") ok = value.is_number();
        else if (type == "null") ok = value.is_null();
        if (!ok) {
            errors.push_back(path + ": expected " + type);
            return;
        }
    }

    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& candidate : schema.at("enum"))
            if (candidate == value)
                found = true;
        if (!found)
            errors.push_back(path + ": value not in enum");
    }

    if (value.is_number()) {
        const double v = value.get<double>();
        if (schema.contains("minimum") && v < schema.at("minimum").get<double>())
            errors.push_back(path + ": below minimum");
        if (schema.contains("maximum") && v > schema.at("maximum").get<double>())
            errors.push_back(path + ": above maximum");
        if (schema.contains("exclusiveMinimum") && v <= schema.at("exclusiveMinimum").get<double>())
            errors.push_back(path + ": not above exclusiveMinimum");
        if (schema.contains("exclusiveMaximum") && v >= schema.at("exclusiveMaximum").get<double>())
            errors.push_back(path + ": not below exclusiveMaximum");
    }

    if (value.is_object()) {
        const json& props = schema.contains("properties") ? schema.at("properties")
                                                          : json::object();
        if (schema.contains("required"))
            for (const auto& req : schema.at("required"))
                if (!value.contains(req.get_ref<const std::string&>()))
                    errors.push_back(path + ": missing required key \"" +
                                     req.get<std::string>() + "\"");
        const bool allow_extra =
            !schema.contains("additionalProperties") || schema.at("additionalProperties") != false;
        for (const auto& [key, sub] : value.items()) {
            if (props.contains(key))
                validate_into(root, props.at(key), sub, path + "." + key, errors);
            else if (!allow_extra)
                errors.push_back(path + ": unknown key \"" + key + "\"");
        }
    }

    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema.at("minItems").get<std::size_t>())
            errors.push_back(path + ": fewer than minItems");
        if (schema.contains("maxItems") && value.size() > schema.at("maxItems").get<std::size_t>())
            errors.push_back(path + ": more than maxItems");
        if (schema.contains("items")) {
            std::size_t i = 0;
            for (const auto& item : value)
                validate_into(root, schema.at("items"), item,
                              path + "[" + std::to_string(i++) + "]", errors);
        }
    }
}

inline std::vector<std::string> validate(const nlohmann::json& schema, const nlohmann::json& value)
{
    std::vector<std::string> errors;
    validate_into(schema, schema, value, "$", errors);
    return errors;
}

inline bool is_valid(const nlohmann::json& schema, const nlohmann::json& value)
{
    return validate(schema, value).empty();
}

} // namespace outline_energy::jsonschema
