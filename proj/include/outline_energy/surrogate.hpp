#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "outline_energy/analysis.hpp"
#include "outline_energy/errors.hpp"
#include "outline_energy/numerics.hpp"
#include "outline_energy/parallel.hpp"

namespace outline_energy::surrogate {

using analysis::Dataset;
using geometry::ShapeKind;

inline constexpr std::size_t kFeatureCount = 8;

/// Monomial basis polynomial over the 8 standardized features.
struct PolyModel {
    int degree = 1;
    std::array<double, kFeatureCount> feature_means{};
    std::array<double, kFeatureCount> feature_stds{};
    std::vector<std::array<int, kFeatureCount>> exponents; // graded-lex, constant first
    std::vector<double> coefficients;
};

struct SplitSpec {
    double train_fraction = 0.3;
    std::uint64_t seed = 0;
};

/// Outcome of one fitted model under one data condition.
struct FitReport {
    std::string condition; // "pooled" | "square" | "tul"
    int degree = 1;
    double r2_test = 0.0;
    double r2_train = 0.0;
    double training_time_ms = 0.0;
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    std::vector<std::pair<double, double>> pairs; // (simulated, predicted) on test rows
};

/// Exponent tuples of all monomials with total degree <= degree, graded-lex:
/// grade ascending, and within one grade the earlier feature's power ranks
/// first (1, x1, ..., x8, x1^2, x1 x2, ...).
inline std::vector<std::array<int, kFeatureCount>> monomial_exponents(int degree)
{
    if (degree < 1 || degree > 4)
        throw std::invalid_argument("monomial_exponents: degree must lie in 1..4");
    std::vector<std::array<int, kFeatureCount>> exps;
    std::array<int, kFeatureCount> current{};
    const auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos == kFeatureCount) {
            if (remaining == 0)
                exps.push_back(current);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            current[pos] = e;
            self(self, pos + 1, remaining - e);
        }
        current[pos] = 0;
    };
    for (int grade = 0; grade <= degree; ++grade)
        recurse(recurse, 0, grade);
    return exps;
}

/// Evaluates every monomial at one standardized feature point.
inline void poly_expand(const std::array<double, kFeatureCount>& x,
                        const std::vector<std::array<int, kFeatureCount>>& exponents,
                        int degree, double* out)
{
    // Power table keeps each monomial to 8 multiplies.
    double powers[kFeatureCount][5];
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        powers[f][0] = 1.0;
        for (int e = 1; e <= degree; ++e)
            powers[f][e] = powers[f][e - 1] * x[f];
    }
    for (std::size_t m = 0; m < exponents.size(); ++m) {
        double v = 1.0;
        for (std::size_t f = 0; f < kFeatureCount; ++f)
            v *= powers[f][exponents[m][f]];
        out[m] = v;
    }
}

inline std::vector<double> poly_expand(const std::array<double, kFeatureCount>& x, int degree)
{
    const auto exps = monomial_exponents(degree);
    std::vector<double> row(exps.size());
    poly_expand(x, exps, degree, row.data());
    return row;
}

/// Seeded Fisher-Yates split into (train, test) index sets: complete shuffle
/// of 0..n-1, first floor(fraction * n) indices train, rest test.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split(std::size_t n, const SplitSpec& spec)
{
    if (n == 0)
        throw DataError("split: dataset is empty");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw ConfigError("split: train fraction must lie in (0, 1)");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 engine(spec.seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::uint64_t bound = i + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t draw;
        do {
            draw = engine();
        } while (draw >= limit);
        std::swap(order[i], order[draw % bound]);
    }
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(spec.train_fraction * static_cast<double>(n)));
    std::vector<std::size_t> train(order.begin(), order.begin() + n_train);
    std::vector<std::size_t> test(order.begin() + n_train, order.end());
    return {std::move(train), std::move(test)};
}

namespace detail {

    inline numerics::Matrix design_matrix(const std::vector<std::array<double, kFeatureCount>>& xs,
                                          const PolyModel& model)
    {
        numerics::Matrix m(xs.size(), model.exponents.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            std::array<double, kFeatureCount> z;
            for (std::size_t f = 0; f < kFeatureCount; ++f)
                z[f] = (xs[i][f] - model.feature_means[f]) / model.feature_stds[f];
            poly_expand(z, model.exponents, model.degree, m.row(i));
        }
        return m;
    }

} // namespace detail

/// Fits one polynomial by minimum-norm least squares. Inputs are z-scored
/// with the training statistics before expansion; without that, degree-4
/// powers of raw densities (~2000 kg/m^3) wreck the conditioning.
/// `training_time_ms` covers expansion plus solve.
inline PolyModel fit(const std::vector<std::array<double, kFeatureCount>>& x,
                     const std::vector<double>& y, int degree,
                     double* training_time_ms = nullptr)
{
    if (x.empty() || x.size() != y.size())
        throw DataError("fit: need matching non-empty features and targets");

    PolyModel model;
    model.degree = degree;
    model.exponents = monomial_exponents(degree);

    const double n = static_cast<double>(x.size());
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        double sum = 0.0;
        for (const auto& row : x)
            sum += row[f];
        model.feature_means[f] = sum / n;
        double ss = 0.0;
        for (const auto& row : x) {
            const double d = row[f] - model.feature_means[f];
            ss += d * d;
        }
        const double sd = x.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        // A constant training feature still standardizes; unit std keeps it
        // inert (the cutoff absorbs the fake variance of summing constants).
        const bool constant = !(sd > 1e-12 * std::max(1.0, std::abs(model.feature_means[f])));
        model.feature_stds[f] = constant ? 1.0 : sd;
    }

    const auto started = std::chrono::steady_clock::now();
    const numerics::Matrix design = detail::design_matrix(x, model);
    model.coefficients = numerics::least_squares_min_norm(design, y);
    const auto elapsed = std::chrono::steady_clock::now() - started;
    if (training_time_ms)
        *training_time_ms =
            std::chrono::duration<double, std::milli>(elapsed).count();
    return model;
}

inline std::vector<double> predict(const PolyModel& model,
                                   const std::vector<std::array<double, kFeatureCount>>& x)
{
    const numerics::Matrix design = detail::design_matrix(x, model);
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double* row = design.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < model.coefficients.size(); ++j)
            acc += row[j] * model.coefficients[j];
        out[i] = acc;
    }
    return out;
}

/// Coefficient of determination about the evaluation set's own mean. Negative
/// values are reported as-is. A constant target counts as a perfect fit when
/// the residual is (numerically) zero and is a hard error otherwise.
inline double r_squared(const PolyModel& model,
                        const std::vector<std::array<double, kFeatureCount>>& x,
                        const std::vector<double>& y)
{
    if (x.empty() || x.size() != y.size())
        throw DataError("r_squared: need matching non-empty features and targets");
    const std::vector<double> pred = predict(model, x);
    double mean = 0.0;
    for (const double v : y)
        mean += v;
    mean /= static_cast<double>(y.size());
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += (y[i] - pred[i]) * (y[i] - pred[i]);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    if (ss_tot == 0.0) {
        const double scale = 1e-9 * (1.0 + std::abs(mean));
        if (ss_res <= scale * scale * static_cast<double>(y.size()))
            return 1.0;
        throw NumericError("r_squared: constant target but non-zero residual");
    }
    return 1.0 - ss_res / ss_tot;
}

/// Runs the two experimental conditions over degrees 1..4: one model on all
/// rows with shape ignored, one on square rows only, one on the T/U/L union.
/// Every group gets its own 30/70 split from the same seed. Reports come out
/// condition-major (pooled, square, tul), degree-ascending; the twelve fits
/// run in parallel.
inline std::vector<FitReport> run_experiment(const Dataset& ds, std::uint64_t seed,
                                             const std::vector<int>& degrees = {1, 2, 3, 4},
                                             double train_fraction = 0.3)
{
    ds.validate();
    for (const ShapeKind k : geometry::kAllShapes) {
        const bool present = std::any_of(ds.samples.begin(), ds.samples.end(),
                                         [k](const auto& s) { return s.shape == k; });
        if (!present)
            throw DataError("run_experiment: dataset must contain all four shapes");
    }

    struct Group {
        std::string label;
        std::vector<std::array<double, kFeatureCount>> x;
        std::vector<double> y;
    };
    std::array<Group, 3> groups{Group{"pooled", {}, {}}, Group{"square", {}, {}},
                                Group{"tul", {}, {}}};
    for (const oracle::Sample& s : ds.samples) {
        const auto row = s.features.as_array();
        groups[0].x.push_back(row);
        groups[0].y.push_back(s.load);
        Group& g = s.shape == ShapeKind::Square ? groups[1] : groups[2];
        g.x.push_back(row);
        g.y.push_back(s.load);
    }

    struct Task {
        const Group* group;
        std::vector<std::size_t> train;
        std::vector<std::size_t> test;
        int degree;
    };
    std::vector<Task> tasks;
    for (const Group& g : groups) {
        const auto [train, test] = split(g.x.size(), {train_fraction, seed});
        for (const int d : degrees)
            tasks.push_back({&g, train, test, d});
    }

    std::vector<FitReport> reports(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t t) {
        const Task& task = tasks[t];
        const Group& g = *task.group;
        std::vector<std::array<double, kFeatureCount>> x_train, x_test;
        std::vector<double> y_train, y_test;
        for (const std::size_t i : task.train) {
            x_train.push_back(g.x[i]);
            y_train.push_back(g.y[i]);
        }
        for (const std::size_t i : task.test) {
            x_test.push_back(g.x[i]);
            y_test.push_back(g.y[i]);
        }

        FitReport report;
        report.condition = g.label;
        report.degree = task.degree;
        report.train_rows = x_train.size();
        report.test_rows = x_test.size();
        const PolyModel model = fit(x_train, y_train, task.degree, &report.training_time_ms);
        report.r2_train = r_squared(model, x_train, y_train);
        report.r2_test = r_squared(model, x_test, y_test);
        const std::vector<double> pred = predict(model, x_test);
        report.pairs.reserve(pred.size());
        for (std::size_t i = 0; i < pred.size(); ++i)
            report.pairs.emplace_back(y_test[i], pred[i]);
        reports[t] = std::move(report);
    });
    return reports;
}

} // namespace outline_energy::surrogate
