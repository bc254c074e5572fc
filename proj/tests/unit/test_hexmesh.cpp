#include "morphtop/hexmesh.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

using namespace mtop;
using mtest::TestRng;
using mtest::all_solid;

namespace {

// Independent convex-hexagon containment check for the locate oracle.
bool hex_contains(const std::array<Vec2, 6>& cs, const Vec2& p, double tol) {
    for (int k = 0; k < 6; ++k) {
        const Vec2 e = cs[(k + 1) % 6] - cs[k];
        if (cross2(e, p - cs[k]) < -tol) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("generate_grid matches the published domain extents") {
    const HexMesh mesh = HexMesh::generate(30, 30, 1.0);
    CHECK(mesh.elements().size() == 900);
    CHECK(mesh.width() == doctest::Approx(45.0).epsilon(1e-12));
    CHECK(mesh.height() == doctest::Approx(30.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(mesh.height() == doctest::Approx(51.9615242).epsilon(1e-6));
}

TEST_CASE("single hexagon mesh") {
    const HexMesh mesh = HexMesh::generate(1, 1, 1.0);
    CHECK(mesh.elements().size() == 1);
    CHECK(mesh.nodes().size() == 6);
    const auto edges = boundary_edges(mesh, all_solid(mesh));
    CHECK(edges.size() == 6);
}

TEST_CASE("2x2 node sharing matches coordinate deduplication") {
    const HexMesh mesh = HexMesh::generate(2, 2, 1.0);
    CHECK(mesh.elements().size() == 4);

    // Oracle: dedupe the 24 corner coordinates with tolerance 1e-9 mm.
    std::vector<Vec2> corners;
    for (const HexElement& el : mesh.elements()) {
        for (const Vec2& c : mesh.corners(el.id)) corners.push_back(c);
    }
    REQUIRE(corners.size() == 24);
    std::vector<Vec2> unique;
    for (const Vec2& c : corners) {
        bool found = false;
        for (const Vec2& u : unique) {
            if ((u - c).norm() <= 1e-9) {
                found = true;
                break;
            }
        }
        if (!found) unique.push_back(c);
    }
    CHECK(mesh.nodes().size() == unique.size());
}

TEST_CASE("invalid generate arguments are rejected") {
    CHECK_THROWS_AS(HexMesh::generate(0, 3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(HexMesh::generate(3, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(HexMesh::generate(3, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(HexMesh::generate(3, 3, -1.0), std::invalid_argument);
}

TEST_CASE("element areas sum to the lattice area") {
    for (auto [cols, rows, a] : {std::tuple{3, 4, 1.0}, {5, 2, 0.7}, {1, 1, 2.5}}) {
        const HexMesh mesh = HexMesh::generate(cols, rows, a);
        double sum = 0.0;
        for (const HexElement& el : mesh.elements()) {
            const auto cs = mesh.corners(el.id);
            sum += polygon_signed_area(std::vector<Vec2>(cs.begin(), cs.end()));
        }
        const double expect = cols * rows * 1.5 * std::sqrt(3.0) * a * a;
        CHECK(sum == doctest::Approx(expect).epsilon(1e-9));
        CHECK(mesh.element_area() == doctest::Approx(expect / (cols * rows)).epsilon(1e-12));
    }
}

TEST_CASE("locate_point returns each element for its centroid") {
    const HexMesh mesh = HexMesh::generate(6, 5, 1.0);
    for (const HexElement& el : mesh.elements()) {
        CHECK(mesh.locate_point(mesh.centroid(el.id)) == el.id);
    }
}

TEST_CASE("locate_point agrees with an exhaustive scan") {
    const HexMesh mesh = HexMesh::generate(5, 4, 1.3);
    TestRng rng(42);
    for (int trial = 0; trial < 300; ++trial) {
        const Vec2 p(rng.uniform(-1.0, mesh.width() + 1.0),
                     rng.uniform(-1.0, mesh.height() + 1.0));
        int expect = -1;
        for (const HexElement& el : mesh.elements()) {
            if (hex_contains(mesh.corners(el.id), p, 1e-9)) {
                expect = el.id;
                break;
            }
        }
        CHECK(mesh.locate_point(p) == expect);
    }
    CHECK(mesh.locate_point(Vec2(1e4, 1e4)) == -1);
}

TEST_CASE("boundary edges match an incidence-count oracle") {
    const HexMesh mesh = HexMesh::generate(2, 2, 1.0);
    const MaterialField solid = all_solid(mesh);

    std::map<std::pair<int, int>, int> incidence;
    for (const HexElement& el : mesh.elements()) {
        for (int k = 0; k < 6; ++k) {
            int u = el.nodes[k];
            int v = el.nodes[(k + 1) % 6];
            if (u > v) std::swap(u, v);
            ++incidence[{u, v}];
        }
    }
    int expect = 0;
    for (const auto& [e, count] : incidence) {
        CHECK(count <= 2);  // interior edges shared by exactly two elements
        if (count == 1) ++expect;
    }
    const auto edges = boundary_edges(mesh, solid);
    CHECK(static_cast<int>(edges.size()) == expect);

    for (const BoundaryEdge& e : edges) {
        CHECK(e.normal.norm() == doctest::Approx(1.0).epsilon(1e-12));
        const Vec2 mid = 0.5 * (mesh.nodes()[e.n0].pos + mesh.nodes()[e.n1].pos);
        CHECK(e.normal.dot(mid - mesh.centroid(e.owner)) > 0.0);  // outward
    }
}

TEST_CASE("boundary of an all-void field is empty") {
    const HexMesh mesh = HexMesh::generate(3, 3, 1.0);
    MaterialField field;
    field.rho.assign(mesh.elements().size(), 0);
    CHECK(boundary_edges(mesh, field).empty());
}

TEST_CASE("boundary edges chain into closed loops") {
    const HexMesh mesh = HexMesh::generate(4, 3, 1.0);
    MaterialField field = all_solid(mesh);
    field.rho[5] = 0;  // punch a hole -> two loops

    const auto edges = boundary_edges(mesh, field);
    const auto loops = chain_boundary_loops(edges);
    CHECK(loops.size() == 2);
    std::size_t total = 0;
    for (const auto& loop : loops) total += loop.size();
    CHECK(total == edges.size());
}

TEST_CASE("mesh dump lists every node and element") {
    const HexMesh mesh = HexMesh::generate(2, 3, 1.0);
    std::ostringstream os;
    mesh.dump(os);
    std::istringstream is(os.str());
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) ++lines;
    CHECK(lines == static_cast<int>(2 + mesh.nodes().size() + 1 + mesh.elements().size()));
}
