#pragma once

#include <cstddef>
#include <vector>

namespace gcf {

// Robustness epsilon for hull/clipping predicates, in mm (mm^2 for areas).
constexpr double kGeomEps = 1e-9;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

double cross(Vec2 o, Vec2 a, Vec2 b);
double distance(Vec2 a, Vec2 b);

/// Convex polygon. Vertices are counter-clockwise with no repeated closing
/// vertex; fewer than 3 vertices marks a degenerate polygon (point/segment).
struct Polygon {
    std::vector<Vec2> vertices;
    bool degenerate() const { return vertices.size() < 3; }
};

/// Rigid planar motion: rotate about `pivot`, then translate.
struct Transform2D {
    double rotation_deg = 0.0;
    Vec2 pivot;
    Vec2 translation;

    Vec2 apply(Vec2 p) const;
    std::vector<Vec2> apply(const std::vector<Vec2>& points) const;
    Transform2D inverse() const;
};

/// Minimal convex polygon containing all points (monotone chain).
/// Collinear boundary points are excluded. Fewer than 3 distinct
/// non-collinear points yield a degenerate polygon. Throws on empty input.
Polygon convex_hull(const std::vector<Vec2>& points);

/// Shoelace area, positive for CCW ordering. Degenerate polygons have area 0.
double polygon_area(const Polygon& p);

/// Area-weighted centroid; falls back to the vertex mean when the area is
/// below 1e-12 (degenerate polygons).
Vec2 polygon_centroid(const Polygon& p);

/// Rotate each point by `deg` degrees CCW about `pivot`. deg == 0 is an
/// exact identity.
std::vector<Vec2> rotate_points(std::vector<Vec2> points, Vec2 pivot, double deg);

std::vector<Vec2> translate_points(std::vector<Vec2> points, double dx, double dy);

/// Area of the intersection of two convex polygons (half-plane clipping).
/// Zero when disjoint or when either input is degenerate.
double convex_intersection_area(const Polygon& a, const Polygon& b);

/// Area of the union of two convex polygons:
/// area(a) + area(b) - intersection.
double union_area(const Polygon& a, const Polygon& b);

/// Signed distance from the polygon boundary; >= -eps means inside or on.
bool polygon_contains(const Polygon& p, Vec2 pt, double eps = kGeomEps);

/// Diagonal of the axis-aligned bounding box of a point set.
double bounding_box_diagonal(const std::vector<Vec2>& points);

/// Resample a polyline to `count` points uniformly spaced by arc length,
/// endpoints included. A single input point (or zero total length) repeats.
std::vector<Vec2> resample_polyline(const std::vector<Vec2>& points, std::size_t count);

}  // namespace gcf
