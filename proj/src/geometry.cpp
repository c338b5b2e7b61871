#include "gcf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gcf {

double cross(Vec2 o, Vec2 a, Vec2 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double distance(Vec2 a, Vec2 b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

Vec2 Transform2D::apply(Vec2 p) const {
    if (rotation_deg == 0.0)
        return p + translation;
    const double rad = rotation_deg * std::numbers::pi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    const Vec2 d = p - pivot;
    return Vec2{pivot.x + c * d.x - s * d.y, pivot.y + s * d.x + c * d.y} + translation;
}

std::vector<Vec2> Transform2D::apply(const std::vector<Vec2>& points) const {
    std::vector<Vec2> out;
    out.reserve(points.size());
    for (Vec2 p : points) out.push_back(apply(p));
    return out;
}

Transform2D Transform2D::inverse() const {
    return Transform2D{-rotation_deg, pivot + translation, Vec2{-translation.x, -translation.y}};
}

Polygon convex_hull(const std::vector<Vec2>& points) {
    if (points.empty())
        throw std::invalid_argument("convex_hull: empty point set");

    std::vector<Vec2> pts = points;
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    const std::size_t n = pts.size();
    if (n <= 2)
        return Polygon{pts};

    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= kGeomEps) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= kGeomEps) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);  // last point repeats the first
    return Polygon{hull};
}

double polygon_area(const Polygon& p) {
    if (p.degenerate())
        return 0.0;
    double twice = 0.0;
    const auto& v = p.vertices;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

Vec2 polygon_centroid(const Polygon& p) {
    const auto& v = p.vertices;
    if (v.empty())
        throw std::invalid_argument("polygon_centroid: empty polygon");
    const double area = polygon_area(p);
    if (std::abs(area) < 1e-12) {
        Vec2 mean{0.0, 0.0};
        for (Vec2 q : v) mean = mean + q;
        return {mean.x / static_cast<double>(v.size()), mean.y / static_cast<double>(v.size())};
    }
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        const double w = a.x * b.y - b.x * a.y;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    return {cx / (6.0 * area), cy / (6.0 * area)};
}

std::vector<Vec2> rotate_points(std::vector<Vec2> points, Vec2 pivot, double deg) {
    if (deg == 0.0)
        return points;
    const double rad = deg * std::numbers::pi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    for (Vec2& p : points) {
        const Vec2 d = p - pivot;
        p = {pivot.x + c * d.x - s * d.y, pivot.y + s * d.x + c * d.y};
    }
    return points;
}

std::vector<Vec2> translate_points(std::vector<Vec2> points, double dx, double dy) {
    for (Vec2& p : points) {
        p.x += dx;
        p.y += dy;
    }
    return points;
}

namespace {

// Clip a convex CCW subject polygon against the half-plane left of edge a->b.
std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& subject, Vec2 a, Vec2 b) {
    std::vector<Vec2> out;
    out.reserve(subject.size() + 2);
    const std::size_t n = subject.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 cur = subject[i];
        const Vec2 nxt = subject[(i + 1) % n];
        const double dc = cross(a, b, cur);
        const double dn = cross(a, b, nxt);
        const bool cur_in = dc >= -kGeomEps;
        const bool nxt_in = dn >= -kGeomEps;
        if (cur_in)
            out.push_back(cur);
        if (cur_in != nxt_in) {
            const double t = dc / (dc - dn);
            out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
        }
    }
    return out;
}

}  // namespace

double convex_intersection_area(const Polygon& a, const Polygon& b) {
    if (a.degenerate() || b.degenerate())
        return 0.0;
    std::vector<Vec2> poly = a.vertices;
    const auto& clip = b.vertices;
    for (std::size_t i = 0, n = clip.size(); i < n && poly.size() >= 3; ++i)
        poly = clip_half_plane(poly, clip[i], clip[(i + 1) % n]);
    if (poly.size() < 3)
        return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        twice += p.x * q.y - q.x * p.y;
    }
    return std::max(0.0, 0.5 * twice);
}

double union_area(const Polygon& a, const Polygon& b) {
    return polygon_area(a) + polygon_area(b) - convex_intersection_area(a, b);
}

bool polygon_contains(const Polygon& p, Vec2 pt, double eps) {
    const auto& v = p.vertices;
    if (v.empty())
        return false;
    if (v.size() == 1)
        return distance(v[0], pt) <= eps;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = v[i];
        const Vec2 b = v[(i + 1) % n];
        const double len = distance(a, b);
        if (len < kGeomEps) {
            if (v.size() == 2)
                return distance(a, pt) <= eps;
            continue;
        }
        if (v.size() == 2) {
            // Segment: perpendicular distance plus projection bounds.
            const double t = ((pt.x - a.x) * (b.x - a.x) + (pt.y - a.y) * (b.y - a.y)) / (len * len);
            const double tc = std::clamp(t, 0.0, 1.0);
            const Vec2 proj = a + tc * (b - a);
            return distance(proj, pt) <= eps;
        }
        if (cross(a, b, pt) / len < -eps)
            return false;
    }
    return true;
}

double bounding_box_diagonal(const std::vector<Vec2>& points) {
    if (points.empty())
        return 0.0;
    double min_x = points[0].x, max_x = points[0].x;
    double min_y = points[0].y, max_y = points[0].y;
    for (Vec2 p : points) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    return std::hypot(max_x - min_x, max_y - min_y);
}

std::vector<Vec2> resample_polyline(const std::vector<Vec2>& points, std::size_t count) {
    if (points.empty())
        throw std::invalid_argument("resample_polyline: empty polyline");
    if (count == 0)
        return {};
    std::vector<double> arc(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i)
        arc[i] = arc[i - 1] + distance(points[i - 1], points[i]);
    const double total = arc.back();
    if (points.size() == 1 || total < kGeomEps)
        return std::vector<Vec2>(count, points.front());
    if (count == 1)
        return {points.front()};

    std::vector<Vec2> out;
    out.reserve(count);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < count; ++k) {
        const double target = total * static_cast<double>(k) / static_cast<double>(count - 1);
        while (seg + 2 < points.size() && arc[seg + 1] < target) ++seg;
        const double span = arc[seg + 1] - arc[seg];
        const double t = span < kGeomEps ? 0.0 : (target - arc[seg]) / span;
        out.push_back(points[seg] + t * (points[seg + 1] - points[seg]));
    }
    return out;
}

}  // namespace gcf
