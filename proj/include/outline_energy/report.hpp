#pragma once

#include <string>

#include "outline_energy/analysis.hpp"
#include "outline_energy/config.hpp"
#include "outline_energy/surrogate.hpp"
#include "outline_energy/version.hpp"

#include "json.hpp"

namespace outline_energy::report {

inline nlohmann::json analysis_report(const analysis::ShapeSummary& summary,
                                      const analysis::ShapeComparison& comparison,
                                      const analysis::PcaResult& pca)
{
    nlohmann::json shape_summary = nlohmann::json::object();
    for (const auto& [shape, st] : summary.per_shape)
        shape_summary[std::string(geometry::to_token(shape))] = {
            {"count", st.count}, {"min", st.min}, {"max", st.max}, {"mean", st.mean},
            {"std", st.std}, {"population_std", st.population_std}};

    nlohmann::json loadings = nlohmann::json::array();
    for (std::size_t i = 0; i < 8; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < 8; ++j)
            row.push_back(pca.loadings(i, j));
        loadings.push_back(row);
    }
    nlohmann::json names = nlohmann::json::array();
    for (const char* name : sampler::kFeatureNames)
        names.push_back(name);

    return nlohmann::json{
        {"shape_summary", shape_summary},
        {"shape_comparison",
         {{"min_pct", comparison.min_pct}, {"max_pct", comparison.max_pct},
          {"mean_pct", comparison.mean_pct}, {"std_pct", comparison.std_pct}}},
        {"pca",
         {{"feature_names", names},
          {"feature_means", pca.feature_means}, {"feature_stds", pca.feature_stds},
          {"loadings", loadings}, {"explained_ratio", pca.explained_ratio},
          {"cumulative_ratio", pca.cumulative_ratio}}}};
}

inline nlohmann::json fits_report(const std::vector<surrogate::FitReport>& reports)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const surrogate::FitReport& r : reports) {
        nlohmann::json pairs = nlohmann::json::array();
        for (const auto& [sim, pred] : r.pairs)
            pairs.push_back({sim, pred});
        entries.push_back({{"condition", r.condition}, {"degree", r.degree},
                           {"r2_test", r.r2_test}, {"r2_train", r.r2_train},
                           {"training_time_ms", r.training_time_ms},
                           {"train_rows", r.train_rows}, {"test_rows", r.test_rows},
                           {"pairs", pairs}});
    }
    return nlohmann::json{{"reports", entries}};
}

inline nlohmann::json provenance(const config::PipelineConfig& cfg)
{
    nlohmann::json config_doc{
        {"seed", cfg.seed}, {"mode", config::to_string(cfg.mode)},
        {"n_random", cfg.n_random}, {"degrees", cfg.degrees},
        {"train_fraction", cfg.train_fraction}, {"split_seed", cfg.split_seed},
        {"climate", oracle::to_json(cfg.climate)},
        {"priors", config::priors_to_json(cfg.priors)}};
    return nlohmann::json{{"tool_version", kVersion},
                          {"seed", cfg.seed},
                          {"config_digest", config::digest(config_doc)},
                          {"priors_digest", config::priors_digest(cfg.priors)}};
}

} // namespace outline_energy::report
