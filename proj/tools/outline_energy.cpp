// outline-energy: synthetic building-outline dataset generation, analysis and
// surrogate fitting from one binary. See README.md for the file formats.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "outline_energy/config.hpp"
#include "outline_energy/errors.hpp"
#include "outline_energy/geometry.hpp"
#include "outline_energy/pipeline.hpp"
#include "outline_energy/version.hpp"

namespace oe = outline_energy;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

struct CommonFlags {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> mode;
    std::optional<std::size_t> n_random;
    std::optional<std::vector<int>> degrees;
    bool svg = false;
};

oe::config::PipelineConfig resolve(const CommonFlags& flags)
{
    oe::config::PipelineConfig cfg;
    if (flags.config_path)
        cfg = oe::config::load_file(*flags.config_path);
    if (flags.seed)
        cfg.seed = *flags.seed;
    if (flags.out_dir)
        cfg.out_dir = *flags.out_dir;
    if (flags.mode) {
        if (*flags.mode == "factorial")
            cfg.mode = oe::config::SampleMode::Factorial;
        else if (*flags.mode == "random")
            cfg.mode = oe::config::SampleMode::Random;
        else
            throw oe::ConfigError("--mode must be \"factorial\" or \"random\"");
    }
    if (flags.n_random)
        cfg.n_random = *flags.n_random;
    if (flags.degrees)
        cfg.degrees = *flags.degrees;
    if (flags.svg)
        cfg.svg = true;
    cfg.validate();
    return cfg;
}

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_sampling, bool with_fit)
{
    cmd->add_option("--config", flags.config_path, "pipeline config JSON file");
    cmd->add_option("--out", flags.out_dir, "output directory");
    if (with_sampling) {
        cmd->add_option("--seed", flags.seed, "generation seed");
        cmd->add_option("--mode", flags.mode, "sampling mode: factorial | random");
        cmd->add_option("--n", flags.n_random, "sample count in random mode");
    }
    if (with_fit)
        cmd->add_option("--degrees", flags.degrees, "polynomial degrees, e.g. --degrees 1 2 3 4")
            ->delimiter(',');
}

void print_shapes()
{
    for (const oe::geometry::ShapeKind kind : oe::geometry::kAllShapes) {
        const oe::geometry::OutlineSpec& o = oe::geometry::canonical_outline(kind);
        std::printf("%s: area %.1f m2, perimeter %.1f m\n",
                    std::string(oe::geometry::to_token(kind)).c_str(), o.floor_area,
                    o.perimeter);
        std::printf("  vertices:");
        for (const oe::geometry::Point& p : o.vertices)
            std::printf(" (%g, %g)", p.x, p.y);
        std::printf("\n  edges (length m @ azimuth deg):");
        for (const oe::geometry::Edge& e : o.edges)
            std::printf(" %g@%g", e.length, e.azimuth_deg);
        std::printf("\n");
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"synthetic building-outline thermal loads: generate, analyze, fit"};
    app.set_version_flag("--version", oe::kVersion);
    app.require_subcommand(1);

    CommonFlags gen_flags, fit_flags, all_flags;
    std::string analyze_csv, fit_csv;
    std::string analyze_out = "out";
    bool analyze_svg = false;
    std::optional<std::uint64_t> fit_seed;

    CLI::App* gen = app.add_subcommand("generate", "write dataset.csv for the configured grid");
    add_common(gen, gen_flags, true, false);

    CLI::App* analyze = app.add_subcommand("analyze", "shape statistics and PCA of a dataset");
    analyze->add_option("data", analyze_csv, "dataset CSV path")->required();
    analyze->add_option("--out", analyze_out, "output directory");
    analyze->add_flag("--svg", analyze_svg, "emit scree and load-density figures");

    CLI::App* fit = app.add_subcommand("fit", "polynomial surrogate fits over a dataset");
    fit->add_option("data", fit_csv, "dataset CSV path")->required();
    add_common(fit, fit_flags, false, true);
    fit->add_option("--seed", fit_seed, "train/test split seed");
    fit->add_flag("--svg", fit_flags.svg, "emit predicted-vs-simulated figures");

    CLI::App* all = app.add_subcommand("run-all", "generate, analyze and fit into one directory");
    add_common(all, all_flags, true, true);
    all->add_flag("--svg", all_flags.svg, "emit all figures");

    CLI::App* shapes = app.add_subcommand("shapes", "print the canonical plan outlines");

    try {
        app.parse(argc, argv);

        if (gen->parsed()) {
            const auto path = oe::pipeline::cmd_generate(resolve(gen_flags));
            std::cout << path.string() << "\n";
        } else if (analyze->parsed()) {
            oe::pipeline::cmd_analyze(analyze_csv, analyze_out, analyze_svg);
            std::cout << (std::filesystem::path(analyze_out) / "analysis.json").string() << "\n";
        } else if (fit->parsed()) {
            auto cfg = resolve(fit_flags);
            if (fit_seed)
                cfg.split_seed = *fit_seed;
            oe::pipeline::cmd_fit(fit_csv, cfg);
            std::cout << (std::filesystem::path(cfg.out_dir) / "fits.json").string() << "\n";
        } else if (all->parsed()) {
            const auto cfg = resolve(all_flags);
            oe::pipeline::cmd_run_all(cfg);
            std::cout << cfg.out_dir << "\n";
        } else if (shapes->parsed()) {
            print_shapes();
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    } catch (const oe::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const oe::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const oe::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const oe::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
