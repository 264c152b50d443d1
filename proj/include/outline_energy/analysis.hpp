#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "outline_energy/errors.hpp"
#include "outline_energy/numerics.hpp"
#include "outline_energy/oracle.hpp"

namespace outline_energy::analysis {

using geometry::ShapeKind;
using oracle::Sample;

/// Where a dataset came from; empty digests for datasets parsed from disk.
struct Provenance {
    std::uint64_t seed = 0;
    std::string priors_digest;
    std::string config_digest;
};

struct Dataset {
    std::vector<Sample> samples;
    Provenance provenance;

    void validate() const
    {
        if (samples.empty())
            throw DataError("dataset is empty");
        for (const Sample& s : samples)
            s.validate();
    }
};

struct LoadStats {
    std::size_t count = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double std = 0.0;            // sample (n-1) standard deviation
    double population_std = 0.0; // divide by n
};

/// Per-shape order statistics and moments of the load column.
struct ShapeSummary {
    std::map<ShapeKind, LoadStats> per_shape;
};

/// The four square-vs-T/U/L ratios, in percent: how much higher the T/U/L
/// average of each statistic is than the square value.
struct ShapeComparison {
    double min_pct = 0.0;
    double max_pct = 0.0;
    double mean_pct = 0.0;
    double std_pct = 0.0;
};

inline ShapeSummary summarize_by_shape(const Dataset& ds)
{
    ds.validate();
    std::map<ShapeKind, std::vector<double>> groups;
    for (const Sample& s : ds.samples)
        groups[s.shape].push_back(s.load);

    ShapeSummary summary;
    for (const auto& [shape, loads] : groups) {
        if (loads.size() < 2)
            throw DataError("shape group \"" + std::string(geometry::to_token(shape)) +
                            "\" has fewer than 2 rows");
        LoadStats st;
        st.count = loads.size();
        st.min = *std::min_element(loads.begin(), loads.end());
        st.max = *std::max_element(loads.begin(), loads.end());
        double sum = 0.0;
        for (const double v : loads)
            sum += v;
        st.mean = sum / static_cast<double>(loads.size());
        double ss = 0.0;
        for (const double v : loads)
            ss += (v - st.mean) * (v - st.mean);
        st.population_std = std::sqrt(ss / static_cast<double>(loads.size()));
        st.std = std::sqrt(ss / static_cast<double>(loads.size() - 1));
        summary.per_shape[shape] = st;
    }
    return summary;
}

inline ShapeComparison shape_comparison(const ShapeSummary& summary)
{
    for (const ShapeKind k : geometry::kAllShapes)
        if (!summary.per_shape.count(k))
            throw DataError("shape comparison needs all four shapes present");
    const LoadStats& sq = summary.per_shape.at(ShapeKind::Square);
    const auto tul_avg = [&](double LoadStats::* field) {
        return (summary.per_shape.at(ShapeKind::TShape).*field +
                summary.per_shape.at(ShapeKind::UShape).*field +
                summary.per_shape.at(ShapeKind::LShape).*field) / 3.0;
    };
    ShapeComparison c;
    c.min_pct = 100.0 * (tul_avg(&LoadStats::min) / sq.min - 1.0);
    c.max_pct = 100.0 * (tul_avg(&LoadStats::max) / sq.max - 1.0);
    c.mean_pct = 100.0 * (tul_avg(&LoadStats::mean) / sq.mean - 1.0);
    c.std_pct = 100.0 * (tul_avg(&LoadStats::std) / sq.std - 1.0);
    return c;
}

/// Normalized per-shape histograms over a shared range plus Gaussian-kernel
/// density curves on a shared 200-point grid.
struct LoadDistribution {
    std::vector<double> bin_edges;                       // shared, bins + 1
    std::map<ShapeKind, std::vector<double>> histogram;  // density per bin, area 1
    std::vector<double> grid;                            // 200 points
    std::map<ShapeKind, std::vector<double>> density;    // KDE values on grid
};

namespace detail {

    inline double quantile_sorted(const std::vector<double>& sorted, double q)
    {
        if (sorted.size() == 1)
            return sorted.front();
        const double pos = q * static_cast<double>(sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
    }

    // Silverman's rule of thumb, with a floor so degenerate groups still
    // produce a usable curve.
    inline double silverman_bandwidth(std::vector<double> values, double range)
    {
        std::sort(values.begin(), values.end());
        const double n = static_cast<double>(values.size());
        double mean = 0.0;
        for (const double v : values)
            mean += v;
        mean /= n;
        double ss = 0.0;
        for (const double v : values)
            ss += (v - mean) * (v - mean);
        const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        const double iqr = quantile_sorted(values, 0.75) - quantile_sorted(values, 0.25);
        double spread = sd;
        if (iqr > 0.0)
            spread = std::min(spread > 0.0 ? spread : iqr, iqr / 1.34);
        double h = 0.9 * spread * std::pow(n, -0.2);
        if (!(h > 0.0))
            h = std::max(1e-3 * range, 1e-9);
        return h;
    }

} // namespace detail

inline LoadDistribution load_distribution(const Dataset& ds, std::size_t bins)
{
    if (bins < 2)
        throw DataError("load_distribution: need at least 2 bins");
    ds.validate();

    double lo = ds.samples.front().load;
    double hi = lo;
    std::map<ShapeKind, std::vector<double>> groups;
    for (const Sample& s : ds.samples) {
        groups[s.shape].push_back(s.load);
        lo = std::min(lo, s.load);
        hi = std::max(hi, s.load);
    }
    if (hi == lo) { // degenerate dataset: widen so bins have width
        lo -= 0.5;
        hi += 0.5;
    }

    LoadDistribution dist;
    dist.bin_edges.resize(bins + 1);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b <= bins; ++b)
        dist.bin_edges[b] = lo + width * static_cast<double>(b);

    constexpr std::size_t kGridPoints = 200;
    dist.grid.resize(kGridPoints);
    for (std::size_t g = 0; g < kGridPoints; ++g)
        dist.grid[g] = lo + (hi - lo) * static_cast<double>(g) / (kGridPoints - 1);

    for (const auto& [shape, values] : groups) {
        std::vector<double> hist(bins, 0.0);
        for (const double v : values) {
            std::size_t b = static_cast<std::size_t>((v - lo) / width);
            if (b >= bins)
                b = bins - 1; // the global maximum lands in the last bin
            hist[b] += 1.0;
        }
        for (double& h : hist)
            h /= static_cast<double>(values.size()) * width;
        dist.histogram[shape] = std::move(hist);

        const double h = detail::silverman_bandwidth(values, hi - lo);
        std::vector<double> kde(kGridPoints, 0.0);
        constexpr double kInvSqrt2Pi = 0.3989422804014327;
        for (std::size_t g = 0; g < kGridPoints; ++g) {
            double acc = 0.0;
            for (const double v : values) {
                const double z = (dist.grid[g] - v) / h;
                acc += std::exp(-0.5 * z * z);
            }
            kde[g] = acc * kInvSqrt2Pi / (static_cast<double>(values.size()) * h);
        }
        dist.density[shape] = std::move(kde);
    }
    return dist;
}

/// Principal component analysis of the standardized feature matrix.
/// Rows of `loadings` follow the feature-vector variable order; column j is
/// the unit eigenvector of PC j+1.
struct PcaResult {
    std::array<double, 8> feature_means{};
    std::array<double, 8> feature_stds{};
    numerics::Matrix loadings;               // 8 x 8
    std::array<double, 8> explained_ratio{}; // descending, sums to 1
    std::array<double, 8> cumulative_ratio{};
};

/// Z-scores the 8 features (shape and load are never inputs here) and
/// eigendecomposes their correlation matrix. Explained ratios are
/// eigenvalues over 8.
inline PcaResult run_pca(const Dataset& ds)
{
    ds.validate();
    const std::size_t n = ds.samples.size();
    if (n < 9)
        throw DataError("run_pca: need at least 9 rows");

    PcaResult result;
    std::vector<std::array<double, 8>> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        rows[i] = ds.samples[i].features.as_array();

    for (std::size_t j = 0; j < 8; ++j) {
        double sum = 0.0;
        for (const auto& r : rows)
            sum += r[j];
        result.feature_means[j] = sum / static_cast<double>(n);
        double ss = 0.0;
        for (const auto& r : rows) {
            const double d = r[j] - result.feature_means[j];
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        // Summing a constant non-dyadic value leaves ~1e-17 of fake variance.
        if (!(sd > 1e-12 * std::max(1.0, std::abs(result.feature_means[j]))))
            throw DataError(std::string("run_pca: feature \"") + sampler::kFeatureNames[j] +
                            "\" has zero variance");
        result.feature_stds[j] = sd;
    }

    numerics::Matrix z(n, 8);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 8; ++j)
            z(i, j) = (rows[i][j] - result.feature_means[j]) / result.feature_stds[j];

    numerics::Matrix corr(8, 8);
    for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t b = a; b < 8; ++b) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += z(i, a) * z(i, b);
            acc /= static_cast<double>(n - 1);
            corr(a, b) = acc;
            corr(b, a) = acc;
        }

    const numerics::EigenResult eig = numerics::symmetric_eigen(corr);
    result.loadings = eig.vectors;
    double cum = 0.0;
    for (std::size_t j = 0; j < 8; ++j) {
        result.explained_ratio[j] = eig.values[j] / 8.0;
        cum += result.explained_ratio[j];
        result.cumulative_ratio[j] = cum;
    }
    return result;
}

} // namespace outline_energy::analysis
