#pragma once

/**
 * @file pipeline.hpp
 * @brief Candidate evaluation and synthesis-run orchestration.
 *
 * One candidate evaluation runs the full chain: mask protection, material
 * assignment, boundary smoothing, second-step removal, feasibility, contact
 * FEA, and the Fourier-descriptor shape objective with volume penalization.
 * Infeasible or non-converged candidates receive a flat penalty objective.
 */

#include "morphtop/config.hpp"
#include "morphtop/contact.hpp"
#include "morphtop/design.hpp"
#include "morphtop/fem.hpp"
#include "morphtop/fsd.hpp"
#include "morphtop/hexmesh.hpp"
#include "morphtop/optimizer.hpp"

#include <memory>
#include <string>
#include <vector>

namespace mtop {

/// Fully resolved problem: mesh built, selectors resolved, defaults applied.
struct Problem {
    ProblemConfig config;
    HexMesh mesh;
    MaterialParams material;

    std::vector<DirichletBC> supports;  // zero-valued boundary conditions
    std::vector<int> load_nodes;
    std::vector<Vec2> load_directions;  // unit, parallel to load_nodes
    std::vector<int> smn_nodes;         // ordered
    ShapeMorphingSet smes;
    std::vector<int> forced_void;
    std::vector<int> forced_solid;

    CurvePolyline target_curve;  // as read (open)
    FourierDescriptor target_fsd;
    ObjectiveWeights weights;

    ContactParams contact;
    NewtonConfig newton;
    OptimizerConfig optimizer;
    MutationBounds bounds;
};

Problem build_problem(const ProblemConfig& cfg);

/// Heavy per-candidate byproducts kept only on request.
struct EvalArtifacts {
    MaterialField material;
    std::vector<Vec2> smoothed_positions;     // all mesh nodes
    std::vector<std::vector<int>> loops;      // boundary loops, mesh node ids
    std::vector<RigidSurface> rigid_surfaces;
    std::vector<int> active_nodes;            // compact index -> mesh node id
    Eigen::VectorXd u;                        // compact dofs
    bool solved = false;
    CurvePolyline actual_curve;               // deformed SMN polyline (open)
    FsdErrors errors;
    ShapeChange zetas;
    double compliance = 0.0;                  // N mm
    std::vector<ContactWorld::ActiveContact> contacts;
    SolveStats solve_stats;
    std::vector<StepRecord> steps;            // converged load-step displacements
};

struct Evaluation {
    Candidate candidate;
    std::shared_ptr<EvalArtifacts> artifacts;
};

Evaluation evaluate_design(const Problem& problem, const DesignVector& design,
                           bool keep_artifacts = false);

DesignVector make_initial_design(const Problem& problem);

struct SynthesisResult {
    RunResult run;
    bool wrote_artifacts = false;
    std::string out_dir;
};

/// Full run: hill climbing with CSV logging, SVG frames every `frames_every`
/// iterations (0 = none), and final artifact export into `out_dir`.
SynthesisResult run_synthesis(const ProblemConfig& cfg, const std::string& out_dir,
                              int frames_every = 0);

/// Single analysis of a stored design; exports its artifacts.
Evaluation replay_design(const ProblemConfig& cfg, const DesignVector& design,
                         const std::string& out_dir);

/// Frame rendering (shared by synth and replay exports).
std::string render_frame(const Problem& problem, const EvalArtifacts& art);

}  // namespace mtop
