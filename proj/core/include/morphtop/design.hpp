#pragma once

/**
 * @file design.hpp
 * @brief Negative circular masks and the element states derived from them.
 *
 * Each mask carries five design variables (x, y, r, s, f): center, radius,
 * contact-surface switch and contact-surface radius fraction. An element is
 * void when its centroid lies strictly inside at least one mask circle; a
 * mask with s = 1 additionally spawns a rigid contact circle of radius f*r.
 */

#include "morphtop/hexmesh.hpp"

#include <vector>

namespace mtop {

struct Mask {
    double x = 0.0;  // mm
    double y = 0.0;  // mm
    double r = 0.0;  // mm
    int s = 0;       // 1 -> generates a rigid contact surface
    double f = 0.5;  // contact surface radius fraction, in (0,1)

    Vec2 center() const { return Vec2(x, y); }
    bool covers(const Vec2& p) const { return (p - center()).squaredNorm() < r * r; }
};

struct DesignVector {
    std::vector<Mask> masks;
    double force = 0.0;  // input force magnitude, N

    int variable_count() const { return 5 * static_cast<int>(masks.size()) + 1; }
};

/// Rigid contact circle spawned by a mask with s = 1.
struct RigidSurface {
    Vec2 center = Vec2::Zero();
    double radius = 0.0;
    std::vector<Vec2> polyline;  // closed chord discretization (first point not repeated)
};

/// Output nodes whose deformed polyline is scored, plus their host elements.
struct ShapeMorphingSet {
    std::vector<int> node_ids;     // ordered along the designated member
    std::vector<int> element_ids;  // derived shape-morphing elements
};

MaterialField assign_material_states(const HexMesh& mesh, const std::vector<Mask>& masks);

struct ProtectOutcome {
    std::vector<Mask> masks;
    bool any_shifted = false;
    bool any_clamped = false;  // pathological mask fell back to r_min
};

/// Shifts masks off shape-morphing element centroids so SMEs stay solid.
/// Offending masks move along the ray from the nearest covered SME centroid
/// through the mask center until that centroid clears by 0.05*a.
ProtectOutcome protect_smes(const std::vector<Mask>& masks, const ShapeMorphingSet& smes,
                            const HexMesh& mesh, double r_min);

std::vector<RigidSurface> generate_rigid_surfaces(const std::vector<Mask>& masks,
                                                  int segment_count);

/// True iff every port element is solid and all ports lie in one
/// edge-connected solid component.
bool check_feasibility(const MaterialField& material, const HexMesh& mesh,
                       const std::vector<int>& port_elements);

double volume_fraction(const MaterialField& material, const HexMesh& mesh);

/// An SMN owns every element incident to it (boundary ties keep all of them).
ShapeMorphingSet derive_smes(const HexMesh& mesh, const std::vector<int>& smn_nodes);

}  // namespace mtop
