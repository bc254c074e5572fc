#include "morphtop/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace mtop {

namespace {

struct NodeEdges {
    int count = 0;
    int e[2] = {-1, -1};
};

}  // namespace

SmoothedBoundary smooth(const std::vector<Vec2>& positions,
                        const std::vector<BoundaryEdge>& boundary, int passes) {
    SmoothedBoundary out;
    out.passes = passes;
    if (boundary.empty() || passes < 1) return out;

    std::unordered_map<int, NodeEdges> incident;
    incident.reserve(boundary.size());
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        for (int n : {boundary[i].n0, boundary[i].n1}) {
            NodeEdges& ne = incident[n];
            if (ne.count < 2) ne.e[ne.count] = static_cast<int>(i);
            ++ne.count;
        }
    }

    std::vector<int> nodes;
    nodes.reserve(incident.size());
    for (const auto& [n, ne] : incident) {
        if (ne.count != 2) {
            out.non_manifold = true;
            continue;
        }
        nodes.push_back(n);
    }
    std::sort(nodes.begin(), nodes.end());

    std::unordered_map<int, Vec2> current;
    current.reserve(nodes.size());
    for (int n : nodes) current[n] = positions[static_cast<std::size_t>(n)];

    auto pos_of = [&](int n) {
        auto it = current.find(n);
        return it != current.end() ? it->second : positions[static_cast<std::size_t>(n)];
    };

    for (int pass = 0; pass < passes; ++pass) {
        std::unordered_map<int, Vec2> updated = current;
        for (int n : nodes) {
            const NodeEdges& ne = incident[n];
            const BoundaryEdge& e0 = boundary[static_cast<std::size_t>(ne.e[0])];
            const BoundaryEdge& e1 = boundary[static_cast<std::size_t>(ne.e[1])];
            const Vec2 m0 = 0.5 * (pos_of(e0.n0) + pos_of(e0.n1));
            const Vec2 m1 = 0.5 * (pos_of(e1.n0) + pos_of(e1.n1));
            const Vec2 d = m1 - m0;
            const double len2 = d.squaredNorm();
            Vec2 foot = m0;
            if (len2 > 0.0) {
                double t = (pos_of(n) - m0).dot(d) / len2;
                t = std::clamp(t, 0.0, 1.0);
                foot = m0 + t * d;
            }
            updated[n] = foot;
        }
        current = std::move(updated);
    }

    out.moved_nodes = nodes;
    out.displaced.reserve(nodes.size());
    for (int n : nodes) out.displaced.push_back(current[n]);
    return out;
}

SmoothedBoundary smooth_pass(const std::vector<Vec2>& positions,
                             const std::vector<BoundaryEdge>& boundary) {
    return smooth(positions, boundary, 1);
}

std::vector<Vec2> apply_smoothing(std::vector<Vec2> positions, const SmoothedBoundary& sb) {
    for (std::size_t i = 0; i < sb.moved_nodes.size(); ++i) {
        positions[static_cast<std::size_t>(sb.moved_nodes[i])] = sb.displaced[i];
    }
    return positions;
}

MaterialField second_step_removal(const MaterialField& material,
                                  const std::vector<Mask>& masks, const HexMesh& mesh,
                                  const std::vector<int>& protected_elements) {
    MaterialField out = material;
    std::vector<std::uint8_t> keep(mesh.elements().size(), 0);
    for (int e : protected_elements) keep[static_cast<std::size_t>(e)] = 1;

    for (const HexElement& el : mesh.elements()) {
        if (!out.solid(el.id) || keep[static_cast<std::size_t>(el.id)]) continue;
        const auto cs = mesh.corners(el.id);
        bool removed = false;
        for (const Mask& m : masks) {
            for (const Vec2& v : cs) {
                if (m.covers(v)) {
                    out.rho[static_cast<std::size_t>(el.id)] = 0;
                    removed = true;
                    break;
                }
            }
            if (removed) break;
        }
    }
    return out;
}

}  // namespace mtop
