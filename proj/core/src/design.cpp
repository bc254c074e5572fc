#include "morphtop/design.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mtop {

MaterialField assign_material_states(const HexMesh& mesh, const std::vector<Mask>& masks) {
    MaterialField field;
    field.rho.assign(mesh.elements().size(), 1);
    for (const HexElement& el : mesh.elements()) {
        const Vec2 c = mesh.centroid(el.id);
        for (const Mask& m : masks) {
            if (m.covers(c)) {
                field.rho[static_cast<std::size_t>(el.id)] = 0;
                break;
            }
        }
    }
    return field;
}

ProtectOutcome protect_smes(const std::vector<Mask>& masks, const ShapeMorphingSet& smes,
                            const HexMesh& mesh, double r_min) {
    if (smes.element_ids.empty()) {
        throw std::invalid_argument("protect_smes: SME list is empty");
    }
    const double margin = 0.05 * mesh.edge_length();

    std::vector<Vec2> sme_centroids;
    sme_centroids.reserve(smes.element_ids.size());
    for (int e : smes.element_ids) sme_centroids.push_back(mesh.centroid(e));

    auto nearest_covered = [&](const Mask& m) -> int {
        int best = -1;
        double best_d2 = 0.0;
        for (std::size_t i = 0; i < sme_centroids.size(); ++i) {
            if (!m.covers(sme_centroids[i])) continue;
            const double d2 = (sme_centroids[i] - m.center()).squaredNorm();
            if (best < 0 || d2 < best_d2) {
                best = static_cast<int>(i);
                best_d2 = d2;
            }
        }
        return best;
    };

    auto shift_clear = [&](Mask& m) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            const int hit = nearest_covered(m);
            if (hit < 0) return true;
            const Vec2 c = sme_centroids[static_cast<std::size_t>(hit)];
            Vec2 dir = m.center() - c;
            const double d = dir.norm();
            dir = (d > 1e-12) ? Vec2(dir / d) : Vec2(1.0, 0.0);
            const Vec2 moved = c + dir * (m.r + margin);
            m.x = moved.x();
            m.y = moved.y();
        }
        return nearest_covered(m) < 0;
    };

    ProtectOutcome out;
    out.masks = masks;
    for (Mask& m : out.masks) {
        if (nearest_covered(m) < 0) continue;
        out.any_shifted = true;
        if (shift_clear(m)) continue;
        // Pathological radius spanning all SMEs: clamp and retry.
        m.r = r_min;
        out.any_clamped = true;
        shift_clear(m);
    }
    return out;
}

std::vector<RigidSurface> generate_rigid_surfaces(const std::vector<Mask>& masks,
                                                  int segment_count) {
    if (segment_count < 8) {
        throw std::invalid_argument("generate_rigid_surfaces: segment_count must be >= 8");
    }
    std::vector<RigidSurface> out;
    for (const Mask& m : masks) {
        if (m.s != 1) continue;
        RigidSurface s;
        s.center = m.center();
        s.radius = m.f * m.r;
        s.polyline.reserve(static_cast<std::size_t>(segment_count));
        for (int k = 0; k < segment_count; ++k) {
            const double ang = 2.0 * M_PI * k / segment_count;
            s.polyline.emplace_back(s.center.x() + s.radius * std::cos(ang),
                                    s.center.y() + s.radius * std::sin(ang));
        }
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

bool check_feasibility(const MaterialField& material, const HexMesh& mesh,
                       const std::vector<int>& port_elements) {
    if (port_elements.empty()) {
        throw std::invalid_argument("check_feasibility: no port elements");
    }
    for (int p : port_elements) {
        if (!material.solid(p)) return false;
    }
    DisjointSet dsu(static_cast<int>(mesh.elements().size()));
    for (const HexElement& el : mesh.elements()) {
        if (!material.solid(el.id)) continue;
        for (int nb : mesh.neighbors(el.id)) {
            if (nb > el.id && material.solid(nb)) dsu.unite(el.id, nb);
        }
    }
    const int root = dsu.find(port_elements.front());
    for (int p : port_elements) {
        if (dsu.find(p) != root) return false;
    }
    return true;
}

double volume_fraction(const MaterialField& material, const HexMesh& mesh) {
    return static_cast<double>(material.solid_count()) /
           static_cast<double>(mesh.elements().size());
}

ShapeMorphingSet derive_smes(const HexMesh& mesh, const std::vector<int>& smn_nodes) {
    ShapeMorphingSet set;
    set.node_ids = smn_nodes;
    std::vector<std::uint8_t> seen(mesh.elements().size(), 0);
    for (int n : smn_nodes) {
        for (int e : mesh.node_elements(n)) {
            if (!seen[static_cast<std::size_t>(e)]) {
                seen[static_cast<std::size_t>(e)] = 1;
                set.element_ids.push_back(e);
            }
        }
    }
    return set;
}

}  // namespace mtop
