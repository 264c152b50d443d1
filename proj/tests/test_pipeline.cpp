#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>

#include "outline_energy/jsonschema.hpp"
#include "outline_energy/pipeline.hpp"
#include "support/test_util.hpp"

using namespace outline_energy;
using test_support::TempDir;
namespace fs = std::filesystem;

namespace {

config::PipelineConfig small_config(const fs::path& out, bool svg = false)
{
    config::PipelineConfig cfg;
    cfg.mode = config::SampleMode::Random;
    cfg.n_random = 360;
    cfg.degrees = {1, 2};
    cfg.out_dir = out.string();
    cfg.svg = svg;
    return cfg;
}

std::size_t line_count(const std::string& text)
{
    std::size_t lines = 0;
    for (const char c : text)
        if (c == '\n')
            ++lines;
    return lines;
}

} // namespace

TEST_CASE("generate: factorial dataset has 5761 lines and is seed-stable")
{
    TempDir tmp("oe-generate");
    config::PipelineConfig cfg;
    cfg.out_dir = (tmp.path() / "a").string();
    const fs::path first = pipeline::cmd_generate(cfg);
    CHECK(first.filename() == "dataset.csv");
    const std::string text_a = test_support::read_text(first);
    CHECK(line_count(text_a) == 5761);

    cfg.out_dir = (tmp.path() / "b").string();
    const std::string text_b = test_support::read_text(pipeline::cmd_generate(cfg));
    CHECK(text_a == text_b);

    cfg.seed = 43;
    cfg.out_dir = (tmp.path() / "c").string();
    CHECK(test_support::read_text(pipeline::cmd_generate(cfg)) != text_a);
}

TEST_CASE("generate: random mode emits n+1 lines")
{
    TempDir tmp("oe-generate-random");
    config::PipelineConfig cfg;
    cfg.mode = config::SampleMode::Random;
    cfg.n_random = 50;
    cfg.out_dir = tmp.path().string();
    const std::string text = test_support::read_text(pipeline::cmd_generate(cfg));
    CHECK(line_count(text) == 51);
}

TEST_CASE("generate output is identical across thread caps")
{
    TempDir tmp("oe-threads");
    config::PipelineConfig cfg;
    cfg.out_dir = (tmp.path() / "t1").string();
    setenv("OUTLINE_ENERGY_THREADS", "1", 1);
    const std::string serial = test_support::read_text(pipeline::cmd_generate(cfg));
    setenv("OUTLINE_ENERGY_THREADS", "5", 1);
    cfg.out_dir = (tmp.path() / "t5").string();
    const std::string threaded = test_support::read_text(pipeline::cmd_generate(cfg));
    unsetenv("OUTLINE_ENERGY_THREADS");
    CHECK(serial == threaded);
}

TEST_CASE("analyze: report blocks and figures")
{
    TempDir tmp("oe-analyze");
    const auto cfg = small_config(tmp.path() / "data");
    const fs::path csv_path = pipeline::cmd_generate(cfg);

    const auto doc = pipeline::cmd_analyze(csv_path, (tmp.path() / "out").string(), true);
    CHECK(doc.contains("shape_summary"));
    CHECK(doc.contains("shape_comparison"));
    CHECK(doc.contains("pca"));
    CHECK(doc.at("pca").at("loadings").size() == 8);
    for (const auto& row : doc.at("pca").at("loadings"))
        CHECK(row.size() == 8);
    double sum = 0.0;
    for (const auto& r : doc.at("pca").at("explained_ratio"))
        sum += r.get<double>();
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-10));

    CHECK(fs::exists(tmp.path() / "out" / "analysis.json"));
    const std::string scree = test_support::read_text(tmp.path() / "out" / "figures" / "scree.svg");
    CHECK(test_support::count_occurrences(scree, "<rect ") == 8);
    CHECK(fs::exists(tmp.path() / "out" / "figures" / "load_density.svg"));

    const auto parsed = nlohmann::json::parse(
        test_support::read_text(tmp.path() / "out" / "analysis.json"));
    CHECK(jsonschema::is_valid(test_support::load_schema("analysis_report.schema.json"), parsed));
}

TEST_CASE("fit: reports, figures, scatter point counts")
{
    TempDir tmp("oe-fit");
    auto cfg = small_config(tmp.path() / "data", true);
    const fs::path csv_path = pipeline::cmd_generate(cfg);

    cfg.out_dir = (tmp.path() / "out").string();
    const auto doc = pipeline::cmd_fit(csv_path, cfg);
    REQUIRE(doc.at("reports").size() == 6); // 2 degrees x 3 conditions
    for (const auto& entry : doc.at("reports")) {
        CHECK(entry.at("training_time_ms").get<double>() > 0.0);
        const std::size_t points = entry.at("pairs").size();
        CHECK(points == entry.at("test_rows").get<std::size_t>());
        const std::string figure = test_support::read_text(
            tmp.path() / "out" / "figures" /
            ("fit_" + entry.at("condition").get<std::string>() + "_deg" +
             std::to_string(entry.at("degree").get<int>()) + ".svg"));
        std::string why;
        INFO(why);
        CHECK(test_support::xml_well_formed(figure, &why));
        CHECK(test_support::count_occurrences(figure, "<circle ") == points);
    }

    const auto parsed =
        nlohmann::json::parse(test_support::read_text(tmp.path() / "out" / "fits.json"));
    CHECK(jsonschema::is_valid(test_support::load_schema("fit_report.schema.json"), parsed));
}

TEST_CASE("run-all produces the full artifact set and reruns identically")
{
    TempDir tmp("oe-runall");
    const auto cfg = small_config(tmp.path() / "run", true);
    pipeline::cmd_run_all(cfg);

    const fs::path out = tmp.path() / "run";
    for (const char* name : {"dataset.csv", "analysis.json", "fits.json", "provenance.json"})
        CHECK(fs::exists(out / name));
    CHECK(fs::is_directory(out / "figures"));

    const auto prov = nlohmann::json::parse(test_support::read_text(out / "provenance.json"));
    CHECK(jsonschema::is_valid(test_support::load_schema("provenance.schema.json"), prov));
    CHECK(prov.at("seed").get<std::uint64_t>() == cfg.seed);
    CHECK(prov.at("tool_version").get<std::string>() == kVersion);

    const std::string dataset_a = test_support::read_text(out / "dataset.csv");
    const std::string analysis_a = test_support::read_text(out / "analysis.json");
    auto fits_a = nlohmann::json::parse(test_support::read_text(out / "fits.json"));

    const auto cfg2 = small_config(tmp.path() / "rerun", true);
    pipeline::cmd_run_all(cfg2);
    const fs::path out2 = tmp.path() / "rerun";
    CHECK(test_support::read_text(out2 / "dataset.csv") == dataset_a);
    CHECK(test_support::read_text(out2 / "analysis.json") == analysis_a);

    // Fit reports match except for wall-clock timing.
    auto fits_b = nlohmann::json::parse(test_support::read_text(out2 / "fits.json"));
    for (auto& entry : fits_a.at("reports"))
        entry.erase("training_time_ms");
    for (auto& entry : fits_b.at("reports"))
        entry.erase("training_time_ms");
    CHECK(fits_a == fits_b);
}

TEST_CASE("analyze on a missing file is an IoError")
{
    CHECK_THROWS_AS(pipeline::cmd_analyze("/nonexistent/nope.csv", "/tmp", false), IoError);
}

TEST_CASE("run-all aborts naming its failing stage")
{
    config::PipelineConfig cfg;
    cfg.out_dir = "/proc/definitely-not-writable/oe";
    try {
        pipeline::cmd_run_all(cfg);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).rfind("generate:", 0) == 0);
    }
}

TEST_CASE("parsed dataset drives analyze to the same result as in-memory data")
{
    TempDir tmp("oe-roundtrip");
    const auto cfg = small_config(tmp.path() / "data");
    const analysis::Dataset built = pipeline::build_dataset(cfg);
    const fs::path csv_path = pipeline::cmd_generate(cfg);
    const analysis::Dataset parsed = csv::read_dataset_file(csv_path);
    REQUIRE(parsed.samples.size() == built.samples.size());
    for (std::size_t i = 0; i < parsed.samples.size(); ++i) {
        CHECK(parsed.samples[i].load == built.samples[i].load);
        CHECK(parsed.samples[i].features.as_array() == built.samples[i].features.as_array());
    }
}
