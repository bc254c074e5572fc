#pragma once

/**
 * @file hexmesh.hpp
 * @brief Regular honeycomb discretization of the rectangular design domain.
 *
 * Flat-top hexagons in offset columns: horizontal pitch 3a/2, vertical pitch
 * sqrt(3)*a for edge length a, with even columns (0-based) sitting lowest so
 * the lattice origin is the lower-left domain corner. The nominal domain
 * extents are width = cols*(3/2)*a and height = rows*sqrt(3)*a; the vertex
 * bounding box overhangs those by half a hexagon on the trailing sides.
 */

#include "morphtop/geom.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mtop {

struct Node {
    int id = -1;
    Vec2 pos = Vec2::Zero();
};

struct HexElement {
    int id = -1;
    std::array<int, 6> nodes{};  // counter-clockwise
};

/// Per-element binary material state: 0 = void, 1 = solid.
struct MaterialField {
    std::vector<std::uint8_t> rho;

    bool solid(int e) const { return rho[static_cast<std::size_t>(e)] != 0; }
    int solid_count() const;
};

/// One edge of the solid region's boundary, owned by exactly one solid element.
struct BoundaryEdge {
    int n0 = -1;  // directed n0 -> n1, CCW around the owner
    int n1 = -1;
    int owner = -1;
    Vec2 normal = Vec2::Zero();  // unit, outward from the solid
};

class HexMesh {
public:
    static HexMesh generate(int cols, int rows, double edge_length);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<HexElement>& elements() const { return elements_; }
    int cols() const { return cols_; }
    int rows() const { return rows_; }
    double edge_length() const { return edge_length_; }

    /// Nominal lattice extents (L1, L2).
    double width() const { return 1.5 * edge_length_ * cols_; }
    double height() const { return std::sqrt(3.0) * edge_length_ * rows_; }

    double element_area() const;  // all hexagons share one area

    Vec2 centroid(int element) const { return centroids_[static_cast<std::size_t>(element)]; }
    std::array<Vec2, 6> corners(int element) const;

    /// Edge-adjacent elements (share a full edge).
    const std::vector<int>& neighbors(int element) const {
        return adjacency_[static_cast<std::size_t>(element)];
    }

    /// Elements incident to a node (1..3 on this lattice).
    const std::vector<int>& node_elements(int node) const {
        return node_elements_[static_cast<std::size_t>(node)];
    }

    /// Element containing p, boundary ties broken to the lowest id; -1 if none.
    int locate_point(const Vec2& p) const;

    /// Plain-text node/element listing.
    void dump(std::ostream& os) const;

private:
    std::vector<Node> nodes_;
    std::vector<HexElement> elements_;
    std::vector<Vec2> centroids_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<int>> node_elements_;
    double edge_length_ = 0.0;
    int cols_ = 0;
    int rows_ = 0;
};

std::vector<BoundaryEdge> boundary_edges(const HexMesh& mesh, const MaterialField& material);

/// Chains boundary edges into closed node loops (each loop implicitly wraps).
std::vector<std::vector<int>> chain_boundary_loops(const std::vector<BoundaryEdge>& edges);

}  // namespace mtop
