#include "morphtop/hexmesh.hpp"

#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace mtop {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// Vertex offsets from the element center on the half-step integer lattice
// (x in units of a/2, y in units of sqrt(3)*a/2), counter-clockwise from the
// rightmost vertex.
constexpr int kOffsets[6][2] = {{2, 0}, {1, 1}, {-1, 1}, {-2, 0}, {-1, -1}, {1, -1}};

}  // namespace

int MaterialField::solid_count() const {
    int n = 0;
    for (std::uint8_t v : rho) n += (v != 0);
    return n;
}

HexMesh HexMesh::generate(int cols, int rows, double edge_length) {
    if (cols < 1 || rows < 1) {
        throw std::invalid_argument("hexmesh: cols and rows must be >= 1");
    }
    if (!(edge_length > 0.0)) {
        throw std::invalid_argument("hexmesh: edge_length must be > 0");
    }

    HexMesh mesh;
    mesh.cols_ = cols;
    mesh.rows_ = rows;
    mesh.edge_length_ = edge_length;

    const double hx = 0.5 * edge_length;
    const double hy = 0.5 * kSqrt3 * edge_length;

    std::unordered_map<std::int64_t, int> key_to_node;
    key_to_node.reserve(static_cast<std::size_t>(cols) * rows * 3);

    auto node_at = [&](int ix, int iy) {
        const std::int64_t key = static_cast<std::int64_t>(ix) * 1000000 + iy;
        auto it = key_to_node.find(key);
        if (it != key_to_node.end()) return it->second;
        const int id = static_cast<int>(mesh.nodes_.size());
        mesh.nodes_.push_back({id, Vec2(ix * hx, iy * hy)});
        key_to_node.emplace(key, id);
        return id;
    };

    mesh.elements_.reserve(static_cast<std::size_t>(cols) * rows);
    mesh.centroids_.reserve(static_cast<std::size_t>(cols) * rows);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int icx = 2 + 3 * c;
            const int icy = 2 * r + 1 + (c & 1);
            HexElement el;
            el.id = r * cols + c;
            for (int k = 0; k < 6; ++k) {
                el.nodes[static_cast<std::size_t>(k)] =
                    node_at(icx + kOffsets[k][0], icy + kOffsets[k][1]);
            }
            mesh.elements_.push_back(el);
            mesh.centroids_.emplace_back(icx * hx, icy * hy);
        }
    }

    // Edge incidence -> adjacency.
    std::map<std::pair<int, int>, std::pair<int, int>> edge_owners;
    for (const HexElement& el : mesh.elements_) {
        for (int k = 0; k < 6; ++k) {
            int u = el.nodes[static_cast<std::size_t>(k)];
            int v = el.nodes[static_cast<std::size_t>((k + 1) % 6)];
            if (u > v) std::swap(u, v);
            auto [it, fresh] = edge_owners.try_emplace({u, v}, std::pair{el.id, -1});
            if (!fresh) it->second.second = el.id;
        }
    }
    mesh.adjacency_.assign(mesh.elements_.size(), {});
    for (const auto& [edge, owners] : edge_owners) {
        if (owners.second >= 0) {
            mesh.adjacency_[static_cast<std::size_t>(owners.first)].push_back(owners.second);
            mesh.adjacency_[static_cast<std::size_t>(owners.second)].push_back(owners.first);
        }
    }

    mesh.node_elements_.assign(mesh.nodes_.size(), {});
    for (const HexElement& el : mesh.elements_) {
        for (int n : el.nodes) {
            mesh.node_elements_[static_cast<std::size_t>(n)].push_back(el.id);
        }
    }
    return mesh;
}

double HexMesh::element_area() const {
    return 1.5 * kSqrt3 * edge_length_ * edge_length_;
}

std::array<Vec2, 6> HexMesh::corners(int element) const {
    const HexElement& el = elements_[static_cast<std::size_t>(element)];
    std::array<Vec2, 6> out;
    for (int k = 0; k < 6; ++k) {
        out[static_cast<std::size_t>(k)] = nodes_[static_cast<std::size_t>(el.nodes[static_cast<std::size_t>(k)])].pos;
    }
    return out;
}

int HexMesh::locate_point(const Vec2& p) const {
    constexpr double tol = 1e-9;  // mm, boundary tie tolerance
    const double reach = edge_length_ + tol;
    std::vector<Vec2> poly(6);
    for (const HexElement& el : elements_) {
        const Vec2 c = centroids_[static_cast<std::size_t>(el.id)];
        if (std::abs(p.x() - c.x()) > reach || std::abs(p.y() - c.y()) > reach) continue;
        const auto cs = corners(el.id);
        poly.assign(cs.begin(), cs.end());
        if (point_in_polygon(p, poly, tol)) return el.id;
    }
    return -1;
}

void HexMesh::dump(std::ostream& os) const {
    os << "# hexmesh cols=" << cols_ << " rows=" << rows_
       << " edge_length=" << edge_length_ << "\n";
    os << "# nodes " << nodes_.size() << "\n";
    char buf[96];
    for (const Node& n : nodes_) {
        std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", n.id, n.pos.x(), n.pos.y());
        os << buf;
    }
    os << "# elements " << elements_.size() << "\n";
    for (const HexElement& el : elements_) {
        os << el.id;
        for (int n : el.nodes) os << ' ' << n;
        os << '\n';
    }
}

std::vector<BoundaryEdge> boundary_edges(const HexMesh& mesh, const MaterialField& material) {
    if (material.rho.size() != mesh.elements().size()) {
        throw std::invalid_argument("boundary_edges: material field size mismatch");
    }
    std::vector<BoundaryEdge> out;
    for (const HexElement& el : mesh.elements()) {
        if (!material.solid(el.id)) continue;
        for (int k = 0; k < 6; ++k) {
            const int u = el.nodes[static_cast<std::size_t>(k)];
            const int v = el.nodes[static_cast<std::size_t>((k + 1) % 6)];
            bool shared_with_solid = false;
            for (int nb : mesh.neighbors(el.id)) {
                if (!material.solid(nb)) continue;
                const auto& nbn = mesh.elements()[static_cast<std::size_t>(nb)].nodes;
                int hits = 0;
                for (int n : nbn) hits += (n == u || n == v);
                if (hits == 2) {
                    shared_with_solid = true;
                    break;
                }
            }
            if (shared_with_solid) continue;
            BoundaryEdge be;
            be.n0 = u;
            be.n1 = v;
            be.owner = el.id;
            const Vec2 d = mesh.nodes()[static_cast<std::size_t>(v)].pos -
                           mesh.nodes()[static_cast<std::size_t>(u)].pos;
            be.normal = Vec2(d.y(), -d.x()).normalized();
            out.push_back(be);
        }
    }
    return out;
}

std::vector<std::vector<int>> chain_boundary_loops(const std::vector<BoundaryEdge>& edges) {
    std::unordered_map<int, int> next;  // n0 -> n1 (directed edges chain uniquely)
    next.reserve(edges.size());
    for (const BoundaryEdge& e : edges) {
        if (!next.emplace(e.n0, e.n1).second) {
            throw std::runtime_error("chain_boundary_loops: non-manifold boundary");
        }
    }
    std::vector<std::vector<int>> loops;
    std::unordered_map<int, bool> used;
    for (const BoundaryEdge& e : edges) {
        if (used[e.n0]) continue;
        std::vector<int> loop;
        int n = e.n0;
        while (!used[n]) {
            used[n] = true;
            loop.push_back(n);
            auto it = next.find(n);
            if (it == next.end()) {
                throw std::runtime_error("chain_boundary_loops: open boundary chain");
            }
            n = it->second;
        }
        if (n != loop.front()) {
            throw std::runtime_error("chain_boundary_loops: loop does not close");
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

}  // namespace mtop
