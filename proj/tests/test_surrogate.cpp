#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "outline_energy/pipeline.hpp"
#include "outline_energy/surrogate.hpp"

using namespace outline_energy;
using surrogate::kFeatureCount;
using surrogate::PolyModel;

namespace {

std::vector<std::array<double, 8>> random_features(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<std::array<double, 8>> rows(n);
    for (auto& row : rows)
        for (double& v : row)
            v = noise(rng);
    return rows;
}

// Quadratic ground truth with known coefficients over standardized inputs.
double planted_quadratic(const std::array<double, 8>& x)
{
    return 3.0 - 1.5 * x[0] + 0.75 * x[3] + 0.5 * x[1] * x[1] - 0.25 * x[2] * x[6] +
           1.25 * x[7] + 0.1 * x[4] * x[5];
}

} // namespace

TEST_CASE("monomial counts per degree")
{
    CHECK(surrogate::monomial_exponents(1).size() == 9);
    CHECK(surrogate::monomial_exponents(2).size() == 45);
    CHECK(surrogate::monomial_exponents(3).size() == 165);
    CHECK(surrogate::monomial_exponents(4).size() == 495);
    CHECK_THROWS_AS(surrogate::monomial_exponents(0), std::invalid_argument);
    CHECK_THROWS_AS(surrogate::monomial_exponents(5), std::invalid_argument);
}

TEST_CASE("monomials are graded-lex with the constant first")
{
    const auto exps = surrogate::monomial_exponents(2);
    CHECK(exps[0] == std::array<int, 8>{0, 0, 0, 0, 0, 0, 0, 0});
    CHECK(exps[1] == std::array<int, 8>{1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(exps[8] == std::array<int, 8>{0, 0, 0, 0, 0, 0, 0, 1});
    CHECK(exps[9] == std::array<int, 8>{2, 0, 0, 0, 0, 0, 0, 0});
    CHECK(exps[10] == std::array<int, 8>{1, 1, 0, 0, 0, 0, 0, 0});
    // No duplicates, grades never decrease.
    std::set<std::array<int, 8>> seen(exps.begin(), exps.end());
    CHECK(seen.size() == exps.size());
    int prev_grade = 0;
    for (const auto& e : exps) {
        int grade = 0;
        for (const int v : e)
            grade += v;
        CHECK(grade >= prev_grade);
        CHECK(grade <= 2);
        prev_grade = grade;
    }
}

TEST_CASE("expansion at the origin is the unit vector")
{
    const std::array<double, 8> zero{};
    for (const int degree : {1, 2, 3, 4}) {
        const auto row = surrogate::poly_expand(zero, degree);
        CHECK(row[0] == 1.0);
        for (std::size_t j = 1; j < row.size(); ++j)
            CHECK(row[j] == 0.0);
    }
}

TEST_CASE("split produces a deterministic disjoint partition")
{
    const auto [train, test] = surrogate::split(10, {0.3, 42});
    CHECK(train.size() == 3);
    CHECK(test.size() == 7);
    std::set<std::size_t> all(train.begin(), train.end());
    all.insert(test.begin(), test.end());
    CHECK(all.size() == 10);

    const auto [train2, test2] = surrogate::split(10, {0.3, 42});
    CHECK(train == train2);
    CHECK(test == test2);

    const auto [train3, test3] = surrogate::split(10, {0.3, 43});
    CHECK(train != train3);

    const auto [big_train, big_test] = surrogate::split(1440, {0.3, 1});
    CHECK(big_train.size() == 432);
    CHECK(big_test.size() == 1008);
}

TEST_CASE("split validates its inputs")
{
    CHECK_THROWS_AS(surrogate::split(0, {0.3, 1}), DataError);
    CHECK_THROWS_AS(surrogate::split(10, {0.0, 1}), ConfigError);
    CHECK_THROWS_AS(surrogate::split(10, {1.0, 1}), ConfigError);
}

TEST_CASE("planted quadratic is recovered exactly")
{
    const auto x_train = random_features(300, 7);
    const auto x_test = random_features(150, 8);
    std::vector<double> y_train, y_test;
    for (const auto& row : x_train)
        y_train.push_back(planted_quadratic(row));
    for (const auto& row : x_test)
        y_test.push_back(planted_quadratic(row));

    double ms = 0.0;
    const PolyModel model = surrogate::fit(x_train, y_train, 2, &ms);
    CHECK(ms > 0.0);
    CHECK(model.coefficients.size() == 45);
    CHECK_THAT(surrogate::r_squared(model, x_test, y_test),
               Catch::Matchers::WithinAbs(1.0, 1e-8));

    // Recover the planted coefficients by evaluating on canonical points: the
    // model standardizes internally, so compare predictions, not raw betas.
    std::mt19937_64 rng(19);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int round = 0; round < 50; ++round) {
        std::array<double, 8> probe{};
        for (double& v : probe)
            v = noise(rng);
        const double expect = planted_quadratic(probe);
        const double got = surrogate::predict(model, {probe})[0];
        REQUIRE_THAT(got, Catch::Matchers::WithinAbs(expect, 1e-6));
    }
}

TEST_CASE("constant targets fit with unit R^2")
{
    const auto x = random_features(40, 3);
    const std::vector<double> y(40, 7.5);
    const PolyModel model = surrogate::fit(x, y, 2);
    CHECK(surrogate::r_squared(model, x, y) == 1.0);
}

TEST_CASE("predicting the mean scores zero")
{
    const auto x = random_features(50, 5);
    std::vector<double> y(50);
    for (std::size_t i = 0; i < 50; ++i)
        y[i] = static_cast<double>(i);
    PolyModel mean_model = surrogate::fit(x, std::vector<double>(50, 24.5), 1);
    CHECK_THAT(surrogate::r_squared(mean_model, x, y),
               Catch::Matchers::WithinAbs(0.0, 1e-9));
}

TEST_CASE("train R^2 never drops as the basis grows")
{
    const auto x = random_features(220, 13);
    std::vector<double> y;
    std::mt19937_64 rng(14);
    std::normal_distribution<double> noise(0.0, 0.5);
    for (const auto& row : x)
        y.push_back(planted_quadratic(row) + std::sin(3.0 * row[0]) + noise(rng));

    double prev = -1.0;
    for (const int degree : {1, 2, 3, 4}) {
        const PolyModel model = surrogate::fit(x, y, degree);
        const double r2 = surrogate::r_squared(model, x, y);
        CHECK(r2 >= prev - 1e-9);
        prev = r2;
    }
}

TEST_CASE("shifting the target shifts predictions by the same constant")
{
    const auto x = random_features(80, 21);
    std::vector<double> y;
    for (const auto& row : x)
        y.push_back(planted_quadratic(row));
    const PolyModel base = surrogate::fit(x, y, 2);

    std::vector<double> shifted = y;
    for (double& v : shifted)
        v += 123.25;
    const PolyModel moved = surrogate::fit(x, shifted, 2);

    const auto p0 = surrogate::predict(base, x);
    const auto p1 = surrogate::predict(moved, x);
    for (std::size_t i = 0; i < x.size(); ++i)
        REQUIRE_THAT(p1[i] - p0[i], Catch::Matchers::WithinAbs(123.25, 1e-8));
}

TEST_CASE("interpolable systems reach unit train R^2")
{
    // 40 rows, 45 monomials at degree 2: full-rank wide system interpolates.
    const auto x = random_features(40, 31);
    std::vector<double> y;
    std::mt19937_64 rng(32);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        y.push_back(noise(rng));
    const PolyModel model = surrogate::fit(x, y, 2);
    CHECK_THAT(surrogate::r_squared(model, x, y), Catch::Matchers::WithinAbs(1.0, 1e-8));
}

TEST_CASE("degree-4 square-only fit completes through the wide route")
{
    // 432 training rows against 495 monomials exercises the p > n path.
    config::PipelineConfig cfg;
    const analysis::Dataset ds = pipeline::build_dataset(cfg);
    std::vector<std::array<double, 8>> x;
    std::vector<double> y;
    for (const auto& s : ds.samples)
        if (s.shape == geometry::ShapeKind::Square) {
            x.push_back(s.features.as_array());
            y.push_back(s.load);
        }
    const auto [train_idx, test_idx] = surrogate::split(x.size(), {0.3, 42});
    REQUIRE(train_idx.size() == 432);
    std::vector<std::array<double, 8>> x_train;
    std::vector<double> y_train;
    for (const std::size_t i : train_idx) {
        x_train.push_back(x[i]);
        y_train.push_back(y[i]);
    }
    const PolyModel model = surrogate::fit(x_train, y_train, 4);
    CHECK(model.coefficients.size() == 495);
    for (const double c : model.coefficients)
        REQUIRE(std::isfinite(c));
    // Minimum-norm interpolates the training rows.
    CHECK_THAT(surrogate::r_squared(model, x_train, y_train),
               Catch::Matchers::WithinAbs(1.0, 1e-6));
}

TEST_CASE("experiment layout: twelve reports, deterministic apart from timing")
{
    const auto rows = sampler::generate_features_random(3, 400);
    analysis::Dataset ds;
    ds.samples = oracle::simulate_rows(rows);

    const auto reports = surrogate::run_experiment(ds, 11);
    REQUIRE(reports.size() == 12);
    std::size_t idx = 0;
    for (const std::string cond : {"pooled", "square", "tul"})
        for (const int degree : {1, 2, 3, 4}) {
            CHECK(reports[idx].condition == cond);
            CHECK(reports[idx].degree == degree);
            CHECK(reports[idx].training_time_ms > 0.0);
            if (cond == "pooled")
                CHECK(reports[idx].train_rows + reports[idx].test_rows == ds.samples.size());
            else
                CHECK(reports[idx].train_rows + reports[idx].test_rows < ds.samples.size());
            CHECK(reports[idx].pairs.size() == reports[idx].test_rows);
            ++idx;
        }

    const auto again = surrogate::run_experiment(ds, 11);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(reports[i].r2_test == again[i].r2_test);
        CHECK(reports[i].r2_train == again[i].r2_train);
        CHECK(reports[i].pairs == again[i].pairs);
    }
}

TEST_CASE("experiment needs all four shapes")
{
    analysis::Dataset ds;
    const sampler::FeatureVector x{10.0, 0.3, 0.15, 2.72, 0.21, 1.13, 2000.0, 1000.0};
    for (int i = 0; i < 40; ++i)
        ds.samples.push_back({geometry::ShapeKind::Square, x, 200.0 + i});
    CHECK_THROWS_AS(surrogate::run_experiment(ds, 1), DataError);
}
