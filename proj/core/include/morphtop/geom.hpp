#pragma once

// Small 2D geometry kernel shared by the mesh, contact and curve modules.

#include <Eigen/Core>

#include <array>
#include <vector>

namespace mtop {

using Vec2 = Eigen::Vector2d;

inline double cross2(const Vec2& a, const Vec2& b) {
    return a.x() * b.y() - a.y() * b.x();
}

// Rotation by +90 degrees.
inline Vec2 perp(const Vec2& v) {
    return Vec2(-v.y(), v.x());
}

double polygon_signed_area(const std::vector<Vec2>& poly);

Vec2 polygon_centroid(const std::vector<Vec2>& poly);

// Convexity of a simple CCW polygon (tolerance on the edge cross products).
bool polygon_is_convex(const std::vector<Vec2>& poly, double tol = 0.0);

// Boundary points within `boundary_tol` count as inside.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& poly, double boundary_tol);

// Closest distance from p to segment [a,b]; optionally reports the segment
// parameter of the closest point in [0,1].
double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b,
                              double* t_param = nullptr);

double segment_segment_distance(const Vec2& a0, const Vec2& a1,
                                const Vec2& b0, const Vec2& b1);

// True when the open interiors of the two segments cross.
bool segments_properly_intersect(const Vec2& a0, const Vec2& a1,
                                 const Vec2& b0, const Vec2& b1);

// Ear-clipping triangulation of a simple CCW polygon; returns vertex index
// triples. Throws std::invalid_argument if the polygon cannot be clipped.
std::vector<std::array<int, 3>> triangulate_polygon(const std::vector<Vec2>& poly);

}  // namespace mtop
