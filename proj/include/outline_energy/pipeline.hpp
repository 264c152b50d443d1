#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "outline_energy/analysis.hpp"
#include "outline_energy/config.hpp"
#include "outline_energy/csv.hpp"
#include "outline_energy/errors.hpp"
#include "outline_energy/oracle.hpp"
#include "outline_energy/report.hpp"
#include "outline_energy/sampler.hpp"
#include "outline_energy/surrogate.hpp"
#include "outline_energy/svg.hpp"

namespace outline_energy::pipeline {

namespace fs = std::filesystem;

namespace detail {

    inline void write_text(const fs::path& path, const std::string& text)
    {
        std::ofstream stream(path, std::ios::binary);
        if (!stream)
            throw IoError("cannot open \"" + path.string() + "\" for writing");
        stream.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!stream)
            throw IoError("write failed for \"" + path.string() + "\"");
    }

    inline void ensure_dir(const fs::path& dir)
    {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw IoError("cannot create directory \"" + dir.string() + "\": " + ec.message());
    }

} // namespace detail

/// Builds the dataset in memory: sample features, simulate loads.
inline analysis::Dataset build_dataset(const config::PipelineConfig& cfg)
{
    cfg.validate();
    const std::vector<sampler::FeatureRow> rows = cfg.mode == config::SampleMode::Factorial
        ? sampler::generate_features(cfg.seed, cfg.priors)
        : sampler::generate_features_random(cfg.seed, cfg.n_random, cfg.priors);
    analysis::Dataset ds;
    ds.samples = oracle::simulate_rows(rows, cfg.climate);
    ds.provenance = {cfg.seed, config::priors_digest(cfg.priors),
                     config::climate_digest(cfg.climate)};
    ds.validate();
    return ds;
}

/// generate: writes <out_dir>/dataset.csv and returns its path.
inline fs::path cmd_generate(const config::PipelineConfig& cfg)
{
    const analysis::Dataset ds = build_dataset(cfg);
    detail::ensure_dir(cfg.out_dir);
    const fs::path path = fs::path(cfg.out_dir) / "dataset.csv";
    csv::write_dataset_file(ds, path);
    return path;
}

/// analyze: shape summary, shape comparison and PCA of a dataset CSV.
/// Writes <out_dir>/analysis.json plus optional figures.
inline nlohmann::json cmd_analyze(const fs::path& data_csv, const std::string& out_dir,
                                  bool emit_svg)
{
    const analysis::Dataset ds = csv::read_dataset_file(data_csv);
    const analysis::ShapeSummary summary = analysis::summarize_by_shape(ds);
    const analysis::ShapeComparison comparison = analysis::shape_comparison(summary);
    const analysis::PcaResult pca = analysis::run_pca(ds);
    const nlohmann::json doc = report::analysis_report(summary, comparison, pca);

    detail::ensure_dir(out_dir);
    detail::write_text(fs::path(out_dir) / "analysis.json", doc.dump(2) + "\n");
    if (emit_svg) {
        const fs::path figures = fs::path(out_dir) / "figures";
        detail::ensure_dir(figures);
        detail::write_text(figures / "scree.svg", svg::scree_plot(pca));
        detail::write_text(figures / "load_density.svg",
                           svg::density_plot(analysis::load_distribution(ds, 40)));
    }
    return doc;
}

/// fit: the 12-report experiment over a dataset CSV. Writes
/// <out_dir>/fits.json plus one scatter figure per fit when asked.
inline nlohmann::json cmd_fit(const fs::path& data_csv, const config::PipelineConfig& cfg)
{
    const analysis::Dataset ds = csv::read_dataset_file(data_csv);
    const std::vector<surrogate::FitReport> reports =
        surrogate::run_experiment(ds, cfg.split_seed, cfg.degrees, cfg.train_fraction);
    const nlohmann::json doc = report::fits_report(reports);

    detail::ensure_dir(cfg.out_dir);
    detail::write_text(fs::path(cfg.out_dir) / "fits.json", doc.dump(2) + "\n");
    if (cfg.svg) {
        const fs::path figures = fs::path(cfg.out_dir) / "figures";
        detail::ensure_dir(figures);
        for (const surrogate::FitReport& r : reports)
            detail::write_text(figures / ("fit_" + r.condition + "_deg" +
                                          std::to_string(r.degree) + ".svg"),
                               svg::scatter_plot(r));
    }
    return doc;
}

/// run-all: generate, analyze, fit, provenance. The first failing stage
/// aborts with its name prefixed to the error.
inline void cmd_run_all(const config::PipelineConfig& cfg)
{
    // Rethrows preserve the error type so exit codes stay meaningful.
    const auto stage = [](const char* name, auto&& fn) {
        const auto prefix = [name](const std::exception& e) {
            return std::string(name) + ": " + e.what();
        };
        try {
            fn();
        } catch (const ConfigError& e) {
            throw ConfigError(prefix(e));
        } catch (const IoError& e) {
            throw IoError(prefix(e));
        } catch (const NumericError& e) {
            throw NumericError(prefix(e));
        } catch (const DataError& e) {
            throw DataError(prefix(e));
        } catch (const std::exception& e) {
            throw std::runtime_error(prefix(e));
        }
    };

    fs::path dataset_path;
    stage("generate", [&] { dataset_path = cmd_generate(cfg); });
    stage("analyze", [&] { cmd_analyze(dataset_path, cfg.out_dir, cfg.svg); });
    stage("fit", [&] { cmd_fit(dataset_path, cfg); });
    stage("provenance", [&] {
        detail::write_text(fs::path(cfg.out_dir) / "provenance.json",
                           report::provenance(cfg).dump(2) + "\n");
    });
}

} // namespace outline_energy::pipeline
