#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "outline_energy/errors.hpp"
#include "outline_energy/oracle.hpp"
#include "outline_energy/rng.hpp"
#include "outline_energy/sampler.hpp"

#include "json.hpp"

namespace outline_energy::config {

enum class SampleMode { Factorial, Random };

inline std::string to_string(SampleMode mode)
{
    return mode == SampleMode::Factorial ? "factorial" : "random";
}

/// Everything one pipeline run needs. The JSON surface is documented by
/// schemas/pipeline_config.schema.json; CLI flags override file keys.
struct PipelineConfig {
    std::uint64_t seed = 42;
    std::string out_dir = "out";
    SampleMode mode = SampleMode::Factorial;
    std::size_t n_random = 100;
    std::vector<int> degrees = {1, 2, 3, 4};
    double train_fraction = 0.3;
    std::uint64_t split_seed = 42;
    bool svg = false;
    oracle::ClimateConfig climate;
    sampler::Priors priors = sampler::default_priors();

    void validate() const
    {
        if (out_dir.empty())
            throw ConfigError("out_dir must be non-empty");
        if (mode == SampleMode::Random && n_random == 0)
            throw ConfigError("n_random must be at least 1 in random mode");
        if (degrees.empty())
            throw ConfigError("degrees must be non-empty");
        for (const int d : degrees)
            if (d < 1 || d > 4)
                throw ConfigError("degrees entries must lie in 1..4");
        if (!(train_fraction > 0.0 && train_fraction < 1.0))
            throw ConfigError("train_fraction must lie in (0, 1)");
        climate.validate();
        priors.validate();
    }
};

namespace detail {

    inline std::uint64_t require_uint(const nlohmann::json& v, const std::string& key)
    {
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
            throw ConfigError("config key \"" + key + "\" must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

    inline void apply_feature_override(sampler::Priors& priors, const nlohmann::json& entry)
    {
        if (!entry.is_object() || !entry.contains("name"))
            throw ConfigError("priors.features entries must be objects with a \"name\"");
        const std::string name = entry.at("name").get<std::string>();
        sampler::FeaturePrior* target = nullptr;
        for (sampler::FeaturePrior* p :
             {&priors.wwr, &priors.shading_depth, &priors.glazing_u, &priors.orientation})
            if (p->name == name)
                target = p;
        if (!target)
            throw ConfigError("priors.features: unknown feature \"" + name + "\"");
        for (const auto& [key, value] : entry.items()) {
            if (key == "name")
                continue;
            if (key == "grid_values") {
                if (!value.is_array() || value.empty())
                    throw ConfigError("priors.features." + name +
                                      ".grid_values must be a non-empty array");
                target->grid_values = value.get<std::vector<double>>();
            } else if (key == "sigma") {
                target->sigma = value.get<double>();
            } else {
                throw ConfigError("priors.features." + name + ": unknown key \"" + key + "\"");
            }
        }
    }

    inline void apply_material_override(sampler::Priors& priors, const nlohmann::json& entry)
    {
        if (!entry.is_object() || !entry.contains("name"))
            throw ConfigError("priors.materials entries must be objects with a \"name\"");
        const std::string name = entry.at("name").get<std::string>();
        sampler::MaterialPrior* target = nullptr;
        for (sampler::MaterialPrior& m : priors.materials)
            if (m.name == name)
                target = &m;
        if (!target)
            throw ConfigError("priors.materials: unknown material \"" + name + "\"");
        for (const auto& [key, value] : entry.items()) {
            if (key == "name")
                continue;
            sampler::NoisyValue* slot = nullptr;
            if (key == "thickness") slot = &target->thickness;
            else if (key == "conductivity") slot = &target->conductivity;
            else if (key == "density") slot = &target->density;
            else if (key == "shc") slot = &target->shc;
            else
                throw ConfigError("priors.materials." + name + ": unknown key \"" + key + "\"");
            if (!value.is_object())
                throw ConfigError("priors.materials." + name + "." + key +
                                  " must be an object with mean/sigma");
            for (const auto& [prop, num] : value.items()) {
                if (prop == "mean") slot->mean = num.get<double>();
                else if (prop == "sigma") slot->sigma = num.get<double>();
                else
                    throw ConfigError("priors.materials." + name + "." + key +
                                      ": unknown key \"" + prop + "\"");
            }
        }
    }

} // namespace detail

/// Parses a config JSON document over the defaults. Unknown keys anywhere are
/// rejected by name.
inline PipelineConfig from_json(const nlohmann::json& doc)
{
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");
    PipelineConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "seed") {
            cfg.seed = detail::require_uint(value, key);
        } else if (key == "out_dir") {
            if (!value.is_string())
                throw ConfigError("config key \"out_dir\" must be a string");
            cfg.out_dir = value.get<std::string>();
        } else if (key == "mode") {
            const std::string m = value.is_string() ? value.get<std::string>() : "";
            if (m == "factorial") cfg.mode = SampleMode::Factorial;
            else if (m == "random") cfg.mode = SampleMode::Random;
            else
                throw ConfigError("config key \"mode\" must be \"factorial\" or \"random\"");
        } else if (key == "n_random") {
            cfg.n_random = static_cast<std::size_t>(detail::require_uint(value, key));
        } else if (key == "degrees") {
            if (!value.is_array())
                throw ConfigError("config key \"degrees\" must be an array");
            cfg.degrees = value.get<std::vector<int>>();
        } else if (key == "train_fraction") {
            if (!value.is_number())
                throw ConfigError("config key \"train_fraction\" must be a number");
            cfg.train_fraction = value.get<double>();
        } else if (key == "split_seed") {
            cfg.split_seed = detail::require_uint(value, key);
        } else if (key == "svg") {
            if (!value.is_boolean())
                throw ConfigError("config key \"svg\" must be a boolean");
            cfg.svg = value.get<bool>();
        } else if (key == "climate") {
            cfg.climate = oracle::climate_from_json(value);
        } else if (key == "priors") {
            if (!value.is_object())
                throw ConfigError("config key \"priors\" must be an object");
            for (const auto& [pkey, pval] : value.items()) {
                if (pkey == "features") {
                    for (const auto& entry : pval)
                        detail::apply_feature_override(cfg.priors, entry);
                } else if (pkey == "materials") {
                    for (const auto& entry : pval)
                        detail::apply_material_override(cfg.priors, entry);
                } else {
                    throw ConfigError("config.priors: unknown key \"" + pkey + "\"");
                }
            }
        } else {
            throw ConfigError("config: unknown key \"" + key + "\"");
        }
    }
    cfg.validate();
    return cfg;
}

inline PipelineConfig load_file(const std::filesystem::path& path)
{
    std::ifstream stream(path);
    if (!stream)
        throw IoError("cannot open config \"" + path.string() + "\"");
    nlohmann::json doc;
    try {
        stream >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config \"" + path.string() + "\": " + e.what());
    }
    return from_json(doc);
}

inline nlohmann::json priors_to_json(const sampler::Priors& p)
{
    const auto feature = [](const sampler::FeaturePrior& f) {
        return nlohmann::json{{"name", f.name}, {"grid_values", f.grid_values},
                              {"sigma", f.sigma}};
    };
    const auto material = [](const sampler::MaterialPrior& m) {
        const auto nv = [](const sampler::NoisyValue& v) {
            return nlohmann::json{{"mean", v.mean}, {"sigma", v.sigma}};
        };
        return nlohmann::json{{"name", m.name}, {"thickness", nv(m.thickness)},
                              {"conductivity", nv(m.conductivity)},
                              {"density", nv(m.density)}, {"shc", nv(m.shc)}};
    };
    return nlohmann::json{
        {"features", {feature(p.wwr), feature(p.shading_depth), feature(p.glazing_u),
                      feature(p.orientation)}},
        {"materials", {material(p.materials[0]), material(p.materials[1])}}};
}

/// FNV-1a digest of the canonical (sorted-key) JSON serialization.
inline std::string digest(const nlohmann::json& doc)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(rng::fnv1a64(doc.dump())));
    return buf;
}

inline std::string priors_digest(const sampler::Priors& p)
{
    return digest(priors_to_json(p));
}

inline std::string climate_digest(const oracle::ClimateConfig& c)
{
    return digest(oracle::to_json(c));
}

} // namespace outline_energy::config
