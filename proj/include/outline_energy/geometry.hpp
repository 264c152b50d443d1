#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "outline_energy/errors.hpp"

namespace outline_energy::geometry {

/// The four plan outlines under study. Serialized as "square" | "t" | "u" | "l".
enum class ShapeKind { Square, TShape, UShape, LShape };

inline constexpr std::array<ShapeKind, 4> kAllShapes = {
    ShapeKind::Square, ShapeKind::TShape, ShapeKind::UShape, ShapeKind::LShape};

inline std::string_view to_token(ShapeKind kind)
{
    switch (kind) {
    case ShapeKind::Square: return "square";
    case ShapeKind::TShape: return "t";
    case ShapeKind::UShape: return "u";
    case ShapeKind::LShape: return "l";
    }
    throw std::invalid_argument("to_token: bad ShapeKind");
}

inline ShapeKind shape_from_token(std::string_view token)
{
    if (token == "square") return ShapeKind::Square;
    if (token == "t") return ShapeKind::TShape;
    if (token == "u") return ShapeKind::UShape;
    if (token == "l") return ShapeKind::LShape;
    throw DataError("unknown shape token \"" + std::string(token) + "\"");
}

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// One facade segment: length in meters plus the azimuth of its outward
/// normal, degrees clockwise from north (0 = north, 90 = east).
struct Edge {
    double length = 0.0;
    double azimuth_deg = 0.0;
};

struct OutlineSpec {
    ShapeKind kind = ShapeKind::Square;
    std::vector<Point> vertices; // counter-clockwise, axis-aligned edges
    double floor_area = 0.0;     // m^2
    double perimeter = 0.0;      // m
    std::vector<Edge> edges;
};

/// Facade areas after applying a window-to-wall ratio.
struct FacadeBreakdown {
    double wall_height = 0.0;
    std::vector<double> glazed_area; // per edge, m^2
    std::vector<double> opaque_area; // per edge, m^2
    double total_glazed = 0.0;
    double total_opaque = 0.0;
};

inline double wrap_degrees(double deg)
{
    double w = std::fmod(deg, 360.0);
    if (w < 0.0)
        w += 360.0;
    return w == 360.0 ? 0.0 : w;
}

namespace detail {

    // Proper or touching intersection between two closed segments.
    inline bool segments_intersect(Point a, Point b, Point c, Point d)
    {
        const auto orient = [](Point p, Point q, Point r) {
            const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
            if (v > 0.0) return 1;
            if (v < 0.0) return -1;
            return 0;
        };
        const auto on_segment = [](Point p, Point q, Point r) {
            return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
                   std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
        };
        const int o1 = orient(a, b, c);
        const int o2 = orient(a, b, d);
        const int o3 = orient(c, d, a);
        const int o4 = orient(c, d, b);
        if (o1 != o2 && o3 != o4)
            return true;
        if (o1 == 0 && on_segment(a, b, c)) return true;
        if (o2 == 0 && on_segment(a, b, d)) return true;
        if (o3 == 0 && on_segment(c, d, a)) return true;
        if (o4 == 0 && on_segment(c, d, b)) return true;
        return false;
    }

} // namespace detail

/// Shoelace area of a simple counter-clockwise polygon. Degenerate input
/// (fewer than 3 distinct vertices, self-intersection) and clockwise winding
/// are rejected.
inline double polygon_area(std::span<const Point> vertices)
{
    const std::size_t n = vertices.size();
    if (n < 4)
        throw std::invalid_argument("polygon_area: need at least 4 vertices");
    for (const Point& p : vertices)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("polygon_area: non-finite vertex");

    std::size_t distinct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        bool seen = false;
        for (std::size_t j = 0; j < i; ++j)
            if (vertices[j].x == vertices[i].x && vertices[j].y == vertices[i].y)
                seen = true;
        if (!seen)
            ++distinct;
    }
    if (distinct < 3)
        throw std::invalid_argument("polygon_area: fewer than 3 distinct vertices");

    // Non-adjacent edge pairs must not touch; wrap-around edges are adjacent.
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = vertices[i];
        const Point b = vertices[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1))
                continue;
            const Point c = vertices[j];
            const Point d = vertices[(j + 1) % n];
            if (detail::segments_intersect(a, b, c, d))
                throw std::invalid_argument("polygon_area: polygon self-intersects");
        }
    }

    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = vertices[i];
        const Point b = vertices[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    if (twice <= 0.0)
        throw std::invalid_argument("polygon_area: vertices must wind counter-clockwise");
    return twice / 2.0;
}

namespace detail {

    inline std::vector<Edge> make_edges(const std::vector<Point>& vertices)
    {
        std::vector<Edge> edges;
        edges.reserve(vertices.size());
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Point a = vertices[i];
            const Point b = vertices[(i + 1) % vertices.size()];
            const double dx = b.x - a.x;
            const double dy = b.y - a.y;
            if ((dx != 0.0) == (dy != 0.0))
                throw std::invalid_argument("outline edges must be axis-aligned and non-degenerate");
            // CCW winding puts the outside on the travel direction's right.
            double azimuth;
            if (dx > 0.0)      azimuth = 180.0; // heading east, facing south
            else if (dx < 0.0) azimuth = 0.0;
            else if (dy > 0.0) azimuth = 90.0;  // heading north, facing east
            else               azimuth = 270.0;
            edges.push_back({std::abs(dx) + std::abs(dy), azimuth});
        }
        return edges;
    }

    inline OutlineSpec build_outline(ShapeKind kind, std::vector<Point> vertices)
    {
        OutlineSpec outline;
        outline.kind = kind;
        outline.floor_area = polygon_area(vertices);
        outline.edges = make_edges(vertices);
        outline.vertices = std::move(vertices);
        outline.perimeter = 0.0;
        for (const Edge& e : outline.edges)
            outline.perimeter += e.length;
        return outline;
    }

} // namespace detail

/// Fixed canonical polygon for each shape: 100 m^2 floor area, every side at
/// least 3.6 m, and a shared 58 m perimeter for T/U/L so their facade-driven
/// loads stay close to one another.
inline const OutlineSpec& canonical_outline(ShapeKind kind)
{
    static const OutlineSpec square = detail::build_outline(
        ShapeKind::Square, {{0, 0}, {10, 0}, {10, 10}, {0, 10}});
    static const OutlineSpec tee = detail::build_outline(
        ShapeKind::TShape,
        {{5, 0}, {9, 0}, {9, 11}, {14, 11}, {14, 15}, {0, 15}, {0, 11}, {5, 11}});
    static const OutlineSpec uee = detail::build_outline(
        ShapeKind::UShape,
        {{0, 0}, {12, 0}, {12, 10.5}, {8, 10.5}, {8, 4}, {4, 4}, {4, 10.5}, {0, 10.5}});
    static const OutlineSpec ell = detail::build_outline(
        ShapeKind::LShape, {{0, 0}, {14, 0}, {14, 4}, {4, 4}, {4, 15}, {0, 15}});
    switch (kind) {
    case ShapeKind::Square: return square;
    case ShapeKind::TShape: return tee;
    case ShapeKind::UShape: return uee;
    case ShapeKind::LShape: return ell;
    }
    throw std::invalid_argument("canonical_outline: bad ShapeKind");
}

/// Splits each facade edge into glazed and opaque areas at the given
/// window-to-wall ratio.
inline FacadeBreakdown facade_breakdown(const OutlineSpec& outline, double wall_height, double wwr)
{
    if (!(wwr >= 0.0 && wwr < 1.0))
        throw std::invalid_argument("facade_breakdown: wwr must lie in [0, 1)");
    if (!(wall_height > 0.0) || !std::isfinite(wall_height))
        throw std::invalid_argument("facade_breakdown: wall height must be positive");

    FacadeBreakdown fb;
    fb.wall_height = wall_height;
    fb.glazed_area.reserve(outline.edges.size());
    fb.opaque_area.reserve(outline.edges.size());
    for (const Edge& e : outline.edges) {
        const double facade = e.length * wall_height;
        const double glazed = wwr * facade;
        fb.glazed_area.push_back(glazed);
        fb.opaque_area.push_back(facade - glazed);
        fb.total_glazed += glazed;
        fb.total_opaque += facade - glazed;
    }
    return fb;
}

/// Edge azimuths after rotating the whole building, wrapped to [0, 360).
inline std::vector<double> rotate_azimuths(const OutlineSpec& outline, double orientation_deg)
{
    if (!std::isfinite(orientation_deg))
        throw std::invalid_argument("rotate_azimuths: orientation must be finite");
    std::vector<double> azimuths;
    azimuths.reserve(outline.edges.size());
    for (const Edge& e : outline.edges)
        azimuths.push_back(wrap_degrees(e.azimuth_deg + orientation_deg));
    return azimuths;
}

} // namespace outline_energy::geometry
