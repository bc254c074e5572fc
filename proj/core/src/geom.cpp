#include "morphtop/geom.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mtop {

double polygon_signed_area(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross2(poly[i], poly[(i + 1) % n]);
    }
    return 0.5 * twice;
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
    const std::size_t n = poly.size();
    const double area = polygon_signed_area(poly);
    if (std::abs(area) < 1e-300) {
        Vec2 mean = Vec2::Zero();
        for (const Vec2& p : poly) mean += p;
        return mean / static_cast<double>(n);
    }
    Vec2 c = Vec2::Zero();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[(i + 1) % n];
        c += (a + b) * cross2(a, b);
    }
    return c / (6.0 * area);
}

bool polygon_is_convex(const std::vector<Vec2>& poly, double tol) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = poly[(i + 1) % n] - poly[i];
        const Vec2 e1 = poly[(i + 2) % n] - poly[(i + 1) % n];
        if (cross2(e0, e1) < -tol) return false;
    }
    return true;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b, double* t_param) {
    const Vec2 d = b - a;
    const double len2 = d.squaredNorm();
    double t = 0.0;
    if (len2 > 0.0) {
        t = (p - a).dot(d) / len2;
        t = std::min(1.0, std::max(0.0, t));
    }
    if (t_param) *t_param = t;
    return (p - (a + t * d)).norm();
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly, double boundary_tol) {
    const std::size_t n = poly.size();
    if (boundary_tol > 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            if (point_segment_distance(p, poly[i], poly[(i + 1) % n]) <= boundary_tol) {
                return true;
            }
        }
    }
    // Crossing number.
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y() > p.y()) != (b.y() > p.y())) {
            const double x_int = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
            if (p.x() < x_int) inside = !inside;
        }
    }
    return inside;
}

bool segments_properly_intersect(const Vec2& a0, const Vec2& a1,
                                 const Vec2& b0, const Vec2& b1) {
    const double d1 = cross2(a1 - a0, b0 - a0);
    const double d2 = cross2(a1 - a0, b1 - a0);
    const double d3 = cross2(b1 - b0, a0 - b0);
    const double d4 = cross2(b1 - b0, a1 - b0);
    return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
           ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

double segment_segment_distance(const Vec2& a0, const Vec2& a1,
                                const Vec2& b0, const Vec2& b1) {
    if (segments_properly_intersect(a0, a1, b0, b1)) return 0.0;
    double d = point_segment_distance(a0, b0, b1);
    d = std::min(d, point_segment_distance(a1, b0, b1));
    d = std::min(d, point_segment_distance(b0, a0, a1));
    d = std::min(d, point_segment_distance(b1, a0, a1));
    return d;
}

namespace {

bool point_strictly_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c,
                                double tol) {
    const double d1 = cross2(b - a, p - a);
    const double d2 = cross2(c - b, p - b);
    const double d3 = cross2(a - c, p - c);
    return d1 > tol && d2 > tol && d3 > tol;
}

}  // namespace

std::vector<std::array<int, 3>> triangulate_polygon(const std::vector<Vec2>& poly) {
    const int n = static_cast<int>(poly.size());
    if (n < 3) throw std::invalid_argument("triangulate_polygon: need at least 3 vertices");

    double scale2 = 0.0;
    for (int i = 0; i < n; ++i) {
        scale2 = std::max(scale2, (poly[(i + 1) % n] - poly[i]).squaredNorm());
    }
    const double area_tol = 1e-14 * scale2;

    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;

    std::vector<std::array<int, 3>> tris;
    tris.reserve(static_cast<std::size_t>(n - 2));

    int guard = 0;
    while (idx.size() > 3) {
        const int m = static_cast<int>(idx.size());
        bool clipped = false;
        for (int i = 0; i < m; ++i) {
            const int i0 = idx[(i + m - 1) % m];
            const int i1 = idx[i];
            const int i2 = idx[(i + 1) % m];
            const Vec2& a = poly[i0];
            const Vec2& b = poly[i1];
            const Vec2& c = poly[i2];
            const double area2 = cross2(b - a, c - a);
            if (area2 <= area_tol) continue;  // reflex or degenerate corner
            bool ear = true;
            for (int k : idx) {
                if (k == i0 || k == i1 || k == i2) continue;
                if (point_strictly_in_triangle(poly[k], a, b, c, -area_tol)) {
                    ear = false;
                    break;
                }
            }
            if (!ear) continue;
            tris.push_back({i0, i1, i2});
            idx.erase(idx.begin() + i);
            clipped = true;
            break;
        }
        if (!clipped) {
            if (++guard > 2) {
                throw std::invalid_argument("triangulate_polygon: polygon is not simple");
            }
            // Retry with degenerate ears allowed: drop the flattest corner.
            int best = -1;
            double best_area = std::numeric_limits<double>::max();
            const int mm = static_cast<int>(idx.size());
            for (int i = 0; i < mm; ++i) {
                const Vec2& a = poly[idx[(i + mm - 1) % mm]];
                const Vec2& b = poly[idx[i]];
                const Vec2& c = poly[idx[(i + 1) % mm]];
                const double area2 = std::abs(cross2(b - a, c - a));
                if (area2 < best_area) {
                    best_area = area2;
                    best = i;
                }
            }
            idx.erase(idx.begin() + best);
        }
    }
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

}  // namespace mtop
