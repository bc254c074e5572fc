#pragma once

/**
 * @file smoothing.hpp
 * @brief Boundary resolution and smoothing.
 *
 * Boundary nodes are projected onto the straight segment joining the
 * midpoints of their two incident boundary edges, which removes the V-notch
 * normal jumps of a raw honeycomb boundary before contact analysis. A second
 * removal step then voids surviving elements that a mask circle still
 * intersects (any vertex strictly inside), producing slender members.
 */

#include "morphtop/design.hpp"
#include "morphtop/hexmesh.hpp"

#include <vector>

namespace mtop {

struct SmoothedBoundary {
    std::vector<int> moved_nodes;  // sorted node ids
    std::vector<Vec2> displaced;   // final positions, parallel to moved_nodes
    int passes = 0;
    bool non_manifold = false;  // some boundary node had != 2 incident boundary edges
};

/// One projection pass; all feet are computed from the incoming positions.
SmoothedBoundary smooth_pass(const std::vector<Vec2>& positions,
                             const std::vector<BoundaryEdge>& boundary);

/// `passes` projection passes, midpoints recomputed from updated positions.
SmoothedBoundary smooth(const std::vector<Vec2>& positions,
                        const std::vector<BoundaryEdge>& boundary, int passes);

std::vector<Vec2> apply_smoothing(std::vector<Vec2> positions, const SmoothedBoundary& sb);

/// Step-2 removal: voids solid elements with any vertex strictly inside a
/// mask. Elements listed in `protected_elements` (SMEs, forced-solid
/// regions) are kept solid.
MaterialField second_step_removal(const MaterialField& material,
                                  const std::vector<Mask>& masks, const HexMesh& mesh,
                                  const std::vector<int>& protected_elements);

}  // namespace mtop
