#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "outline_energy/errors.hpp"
#include "outline_energy/geometry.hpp"
#include "outline_energy/parallel.hpp"
#include "outline_energy/rng.hpp"

namespace outline_energy::sampler {

using geometry::ShapeKind;

/// Lower bound for a noisy feature; upper bounds are always exclusive.
struct Bounds {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool lo_inclusive = false;

    bool contains(double v) const
    {
        return (lo_inclusive ? v >= lo : v > lo) && v < hi;
    }
};

/// Grid of nominal values plus the Gaussian noise applied around each.
struct FeaturePrior {
    std::string name;
    std::vector<double> grid_values;
    double sigma = 0.0;
    std::optional<Bounds> bounds; // out-of-bounds draws are rejected and redrawn
    std::optional<double> wrap;   // circular features wrap instead (degrees)
};

struct NoisyValue {
    double mean = 0.0;
    double sigma = 0.0;
};

/// Wall material option: mean and noise per physical property.
struct MaterialPrior {
    std::string name;
    NoisyValue thickness;    // m
    NoisyValue conductivity; // W/(m K)
    NoisyValue density;      // kg/m^3
    NoisyValue shc;          // J/(kg K)
};

/// The 8 numeric building features, in the order they appear everywhere:
/// CSV columns, PCA variables, and regression inputs.
struct FeatureVector {
    double orientation_deg = 0.0;
    double wwr = 0.0;
    double shading_depth_m = 0.0;
    double glazing_u = 0.0;      // W/(m^2 K)
    double wall_thickness_m = 0.0;
    double wall_conductivity = 0.0; // W/(m K)
    double wall_density = 0.0;      // kg/m^3
    double wall_shc = 0.0;          // J/(kg K)

    std::array<double, 8> as_array() const
    {
        return {orientation_deg, wwr, shading_depth_m, glazing_u,
                wall_thickness_m, wall_conductivity, wall_density, wall_shc};
    }

    static FeatureVector from_array(const std::array<double, 8>& a)
    {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]};
    }

    void validate() const
    {
        const auto a = as_array();
        for (const double v : a)
            if (!std::isfinite(v))
                throw DataError("feature vector has a non-finite entry");
        if (!(orientation_deg >= 0.0 && orientation_deg < 360.0))
            throw DataError("orientation must lie in [0, 360)");
        if (!(wwr > 0.0 && wwr < 1.0))
            throw DataError("wwr must lie in (0, 1)");
        if (!(shading_depth_m >= 0.0))
            throw DataError("shading depth must be non-negative");
        for (const double v : {glazing_u, wall_thickness_m, wall_conductivity,
                               wall_density, wall_shc})
            if (!(v > 0.0))
                throw DataError("glazing/wall properties must be positive");
    }
};

inline constexpr std::array<const char*, 8> kFeatureNames = {
    "orientation_deg", "wwr", "shading_depth_m", "glazing_u_w_m2k",
    "wall_thickness_m", "wall_conductivity_w_mk", "wall_density_kg_m3",
    "wall_shc_j_kgk"};

/// One cell of the full-factorial grid: 5 x 4 x 3 x 12 x 2 = 1440 per shape.
struct GridCell {
    ShapeKind shape = ShapeKind::Square;
    std::size_t wwr_idx = 0;
    std::size_t shading_idx = 0;
    std::size_t glazing_idx = 0;
    std::size_t orientation_idx = 0;
    std::size_t material_idx = 0;
};

struct Priors {
    FeaturePrior wwr;
    FeaturePrior shading_depth;
    FeaturePrior glazing_u;
    FeaturePrior orientation;
    std::array<MaterialPrior, 2> materials;

    void validate() const
    {
        for (const FeaturePrior* p : {&wwr, &shading_depth, &glazing_u, &orientation}) {
            if (p->grid_values.empty())
                throw ConfigError("prior \"" + p->name + "\": grid must be non-empty");
            if (!(p->sigma >= 0.0))
                throw ConfigError("prior \"" + p->name + "\": sigma must be >= 0");
            for (std::size_t i = 1; i < p->grid_values.size(); ++i)
                if (!(p->grid_values[i] > p->grid_values[i - 1]))
                    throw ConfigError("prior \"" + p->name + "\": grid must be strictly increasing");
        }
        for (const MaterialPrior& m : materials)
            for (const NoisyValue* v : {&m.thickness, &m.conductivity, &m.density, &m.shc}) {
                if (!(v->mean > 0.0))
                    throw ConfigError("material \"" + m.name + "\": means must be positive");
                if (!(v->sigma >= 0.0))
                    throw ConfigError("material \"" + m.name + "\": sigmas must be >= 0");
            }
    }

    std::size_t cells_per_shape() const
    {
        return wwr.grid_values.size() * shading_depth.grid_values.size() *
               glazing_u.grid_values.size() * orientation.grid_values.size() *
               materials.size();
    }
};

/// Feature grids and noise levels used for data generation: WWR, shading
/// depth, glazing U-value and orientation with their sigmas, plus the two
/// wall material options with per-property means and sigmas.
inline Priors default_priors()
{
    Priors p;
    p.wwr = {"wwr", {0.1, 0.2, 0.3, 0.4, 0.5}, 0.01,
             Bounds{0.0, 1.0, false}, std::nullopt};
    p.shading_depth = {"shading_depth", {0.0, 0.15, 0.30, 0.45}, 0.01,
                       Bounds{0.0, std::numeric_limits<double>::infinity(), true}, std::nullopt};
    p.glazing_u = {"glazing_u", {0.7, 2.72, 4.54}, 0.01,
                   Bounds{0.0, std::numeric_limits<double>::infinity(), false}, std::nullopt};
    std::vector<double> degrees;
    for (int i = 0; i < 12; ++i)
        degrees.push_back(30.0 * i);
    p.orientation = {"orientation", degrees, 3.0, std::nullopt, 360.0};
    p.materials[0] = {"concrete", {0.21, 0.021}, {1.13, 0.1}, {2000.0, 30.0}, {1000.0, 106.0}};
    p.materials[1] = {"brick", {0.16, 0.016}, {0.84, 0.27}, {1700.0, 297.5}, {800.0, 86.0}};
    return p;
}

/// All grid cells for one shape in odometer order: WWR slowest, then shading
/// depth, glazing U-value, orientation, and material fastest.
inline std::vector<GridCell> enumerate_grid(ShapeKind shape, const Priors& priors = default_priors())
{
    std::vector<GridCell> cells;
    cells.reserve(priors.cells_per_shape());
    for (std::size_t w = 0; w < priors.wwr.grid_values.size(); ++w)
        for (std::size_t s = 0; s < priors.shading_depth.grid_values.size(); ++s)
            for (std::size_t g = 0; g < priors.glazing_u.grid_values.size(); ++g)
                for (std::size_t o = 0; o < priors.orientation.grid_values.size(); ++o)
                    for (std::size_t m = 0; m < priors.materials.size(); ++m)
                        cells.push_back({shape, w, s, g, o, m});
    return cells;
}

namespace detail {

    inline double draw_noisy(rng::Stream& stream, double nominal, double sigma,
                             const std::optional<Bounds>& bounds,
                             const std::optional<double>& wrap,
                             const std::string& name)
    {
        if (wrap) {
            double v = std::fmod(nominal + sigma * stream.normal(), *wrap);
            if (v < 0.0)
                v += *wrap;
            return v == *wrap ? 0.0 : v; // fp addition can round up onto the modulus
        }
        // Rejection keeps the in-bounds distribution Gaussian-shaped;
        // clamping would pile probability mass onto the bound itself.
        for (int attempt = 0; attempt <= 100; ++attempt) {
            const double v = nominal + sigma * stream.normal();
            if (!bounds || bounds->contains(v))
                return v;
        }
        throw ConfigError("feature \"" + name +
                          "\": over 100 consecutive rejections; prior is misconfigured");
    }

} // namespace detail

/// One noisy draw around the cell's nominal values. Features are drawn in
/// feature-vector order, one stream per cell.
inline FeatureVector perturb(const GridCell& cell, const Priors& priors, rng::Stream& stream)
{
    const auto nominal = [](const FeaturePrior& p, std::size_t i) {
        if (i >= p.grid_values.size())
            throw ConfigError("grid index out of range for prior \"" + p.name + "\"");
        return p.grid_values[i];
    };
    if (cell.material_idx >= priors.materials.size())
        throw ConfigError("material index out of range");
    const MaterialPrior& mat = priors.materials[cell.material_idx];
    const Bounds positive{0.0, std::numeric_limits<double>::infinity(), false};

    FeatureVector x;
    x.orientation_deg = detail::draw_noisy(stream, nominal(priors.orientation, cell.orientation_idx),
                                           priors.orientation.sigma, priors.orientation.bounds,
                                           priors.orientation.wrap, priors.orientation.name);
    x.wwr = detail::draw_noisy(stream, nominal(priors.wwr, cell.wwr_idx), priors.wwr.sigma,
                               priors.wwr.bounds, priors.wwr.wrap, priors.wwr.name);
    x.shading_depth_m = detail::draw_noisy(stream, nominal(priors.shading_depth, cell.shading_idx),
                                           priors.shading_depth.sigma, priors.shading_depth.bounds,
                                           priors.shading_depth.wrap, priors.shading_depth.name);
    x.glazing_u = detail::draw_noisy(stream, nominal(priors.glazing_u, cell.glazing_idx),
                                     priors.glazing_u.sigma, priors.glazing_u.bounds,
                                     priors.glazing_u.wrap, priors.glazing_u.name);
    x.wall_thickness_m = detail::draw_noisy(stream, mat.thickness.mean, mat.thickness.sigma,
                                            positive, std::nullopt, "wall_thickness");
    x.wall_conductivity = detail::draw_noisy(stream, mat.conductivity.mean, mat.conductivity.sigma,
                                             positive, std::nullopt, "wall_conductivity");
    x.wall_density = detail::draw_noisy(stream, mat.density.mean, mat.density.sigma,
                                        positive, std::nullopt, "wall_density");
    x.wall_shc = detail::draw_noisy(stream, mat.shc.mean, mat.shc.sigma,
                                    positive, std::nullopt, "wall_shc");
    x.validate();
    return x;
}

/// A generated row before simulation.
struct FeatureRow {
    ShapeKind shape = ShapeKind::Square;
    GridCell cell;
    FeatureVector features;
};

/// Full factorial dataset: 1440 rows per shape, shapes in square/t/u/l order.
/// Row i draws from a stream keyed on (seed, shape token, cell index), so the
/// output is byte-identical no matter how the loop is parallelized.
inline std::vector<FeatureRow> generate_features(std::uint64_t seed,
                                                 const Priors& priors = default_priors())
{
    priors.validate();
    const std::size_t per_shape = priors.cells_per_shape();
    std::vector<FeatureRow> rows(per_shape * geometry::kAllShapes.size());

    std::vector<std::vector<GridCell>> grids;
    for (const ShapeKind shape : geometry::kAllShapes)
        grids.push_back(enumerate_grid(shape, priors));

    parallel_for(rows.size(), [&](std::size_t i) {
        const std::size_t shape_idx = i / per_shape;
        const std::size_t cell_idx = i % per_shape;
        const ShapeKind shape = geometry::kAllShapes[shape_idx];
        rng::Stream stream(seed, geometry::to_token(shape), cell_idx);
        const GridCell& cell = grids[shape_idx][cell_idx];
        rows[i] = {shape, cell, perturb(cell, priors, stream)};
    });
    return rows;
}

/// Random mode: n rows with shape and grid cell drawn uniformly. Each row has
/// its own (seed, "random", i) stream for both the cell pick and the noise.
inline std::vector<FeatureRow> generate_features_random(std::uint64_t seed, std::size_t n,
                                                        const Priors& priors = default_priors())
{
    priors.validate();
    std::vector<FeatureRow> rows(n);
    parallel_for(n, [&](std::size_t i) {
        rng::Stream stream(seed, "random", i);
        GridCell cell;
        cell.shape = geometry::kAllShapes[stream.below(geometry::kAllShapes.size())];
        cell.wwr_idx = stream.below(priors.wwr.grid_values.size());
        cell.shading_idx = stream.below(priors.shading_depth.grid_values.size());
        cell.glazing_idx = stream.below(priors.glazing_u.grid_values.size());
        cell.orientation_idx = stream.below(priors.orientation.grid_values.size());
        cell.material_idx = stream.below(priors.materials.size());
        rows[i] = {cell.shape, cell, perturb(cell, priors, stream)};
    });
    return rows;
}

} // namespace outline_energy::sampler
