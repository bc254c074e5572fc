// Micro-benchmarks for the evaluation hot path.

#include "morphtop/contact.hpp"
#include "morphtop/fem.hpp"
#include "morphtop/fsd.hpp"
#include "morphtop/hexmesh.hpp"
#include "morphtop/mean_value.hpp"
#include "morphtop/smoothing.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace mtop;

std::vector<Vec2> regular_hexagon() {
    std::vector<Vec2> poly;
    for (int k = 0; k < 6; ++k) {
        poly.emplace_back(std::cos(M_PI * k / 3.0), std::sin(M_PI * k / 3.0));
    }
    return poly;
}

FemModel block_model(int cols, int rows) {
    const HexMesh mesh = HexMesh::generate(cols, rows, 1.0);
    FemModel model;
    model.material = MaterialParams{};
    for (const Node& n : mesh.nodes()) model.X.push_back(n.pos);
    for (const HexElement& el : mesh.elements()) {
        std::vector<int> ids(el.nodes.begin(), el.nodes.end());
        const auto cs = mesh.corners(el.id);
        model.elements.emplace_back(ids, std::vector<Vec2>(cs.begin(), cs.end()));
    }
    model.f_ext = Eigen::VectorXd::Zero(model.dof_count());
    return model;
}

void BM_MeanValueShape(benchmark::State& state) {
    const auto poly = regular_hexagon();
    const Vec2 p(0.21, -0.13);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mean_value_shape(poly, p));
    }
}
BENCHMARK(BM_MeanValueShape);

void BM_MeshGenerate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(HexMesh::generate(n, n, 1.0));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeshGenerate)->Arg(10)->Arg(30);

void BM_ElementQuadratureBuild(benchmark::State& state) {
    const auto poly = regular_hexagon();
    const std::vector<int> ids = {0, 1, 2, 3, 4, 5};
    for (auto _ : state) {
        benchmark::DoNotOptimize(PolygonElement(ids, poly));
    }
}
BENCHMARK(BM_ElementQuadratureBuild);

void BM_InternalForce(benchmark::State& state) {
    FemModel model = block_model(10, 8);
    Eigen::VectorXd u = Eigen::VectorXd::Constant(model.dof_count(), 1e-3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(internal_force(model, u));
    }
}
BENCHMARK(BM_InternalForce);

void BM_TangentAssembly(benchmark::State& state) {
    FemModel model = block_model(10, 8);
    Eigen::VectorXd u = Eigen::VectorXd::Constant(model.dof_count(), 1e-3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tangent_stiffness(model, u));
    }
}
BENCHMARK(BM_TangentAssembly);

void BM_ContactDetect(benchmark::State& state) {
    const HexMesh mesh = HexMesh::generate(10, 8, 1.0);
    MaterialField solid;
    solid.rho.assign(mesh.elements().size(), 1);
    const auto loops = chain_boundary_loops(boundary_edges(mesh, solid));
    ContactParams prm;
    prm.eps_mutual = 2425.0;
    prm.eps_self = 202.0;
    prm.search_radius = 2.0;
    prm.gap_tol = 1e-4;
    ContactWorld world(loops, {RigidCircle{Vec2(7.5, -1.8), 2.0}}, prm);
    std::vector<Vec2> x;
    for (const Node& n : mesh.nodes()) x.push_back(n.pos);
    for (auto _ : state) {
        benchmark::DoNotOptimize(world.detect_pairs(x));
    }
}
BENCHMARK(BM_ContactDetect);

void BM_Smoothing(benchmark::State& state) {
    const HexMesh mesh = HexMesh::generate(10, 8, 1.0);
    MaterialField field;
    field.rho.assign(mesh.elements().size(), 1);
    field.rho[33] = 0;
    field.rho[34] = 0;
    const auto edges = boundary_edges(mesh, field);
    std::vector<Vec2> pos;
    for (const Node& n : mesh.nodes()) pos.push_back(n.pos);
    for (auto _ : state) {
        benchmark::DoNotOptimize(smooth(pos, edges, 10));
    }
}
BENCHMARK(BM_Smoothing);

void BM_FourierDescriptor(benchmark::State& state) {
    CurvePolyline curve;
    const int n = 512;
    for (int k = 0; k < n; ++k) {
        const double ang = -2.0 * M_PI * k / n;
        curve.points.emplace_back(std::cos(ang) + 0.1 * std::cos(5 * ang), std::sin(ang));
    }
    curve.closed = true;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_fsd(curve, 50));
    }
}
BENCHMARK(BM_FourierDescriptor);

}  // namespace

BENCHMARK_MAIN();
