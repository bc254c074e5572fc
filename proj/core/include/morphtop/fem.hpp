#pragma once

/**
 * @file fem.hpp
 * @brief Large-deformation plane-strain FEA on arbitrary polygonal elements.
 *
 * Elements interpolate with mean value shape functions evaluated at a fixed
 * reference quadrature (centroid-fan triangulation with 3-point Gauss rules
 * per triangle; ear-clipping when the centroid does not see the whole
 * polygon). Internal forces use the neo-Hookean first Piola-Kirchhoff stress,
 * which in the current configuration coincides with the updated-Lagrangian
 * Cauchy-stress form. The tangent carries both material and geometric terms.
 *
 * newton_solve ramps the external load in adaptive increments (halving on
 * failure, doubling after three consecutive successes) and, when a contact
 * world is attached, wraps each increment in an Uzawa multiplier loop.
 */

#include "morphtop/contact.hpp"
#include "morphtop/geom.hpp"
#include "morphtop/material.hpp"
#include "morphtop/mean_value.hpp"

#include <Eigen/Sparse>

#include <string>
#include <vector>

namespace mtop {

/// Reference-configuration quadrature for a simple polygon; weights are
/// positive and sum to the polygon area.
struct PolygonQuadrature {
    std::vector<Vec2> points;
    std::vector<double> weights;
};
PolygonQuadrature polygon_quadrature(const std::vector<Vec2>& polygon);

class PolygonElement {
public:
    PolygonElement(std::vector<int> node_ids, std::vector<Vec2> corners);

    const std::vector<int>& node_ids() const { return node_ids_; }
    const std::vector<Vec2>& corners() const { return corners_; }
    int vertex_count() const { return static_cast<int>(node_ids_.size()); }
    double area() const { return area_; }

    struct QuadPoint {
        Vec2 position;           // reference coordinates
        double weight;           // reference area weight
        Eigen::VectorXd N;       // shape values
        Eigen::MatrixX2d dN;     // shape gradients w.r.t. reference coords
    };
    const std::vector<QuadPoint>& quadrature() const { return quad_; }

private:
    std::vector<int> node_ids_;
    std::vector<Vec2> corners_;
    std::vector<QuadPoint> quad_;
    double area_ = 0.0;
};

/// Prescribed displacement component, ramped with the load factor.
struct DirichletBC {
    int node = -1;
    int comp = 0;        // 0 = x, 1 = y
    double value = 0.0;  // value at load factor 1
};

struct FemModel {
    std::vector<Vec2> X;  // reference nodal positions
    std::vector<PolygonElement> elements;
    MaterialParams material;
    std::vector<DirichletBC> dirichlet;
    Eigen::VectorXd f_ext;  // external load at load factor 1 (size 2*nodes)

    int dof_count() const { return 2 * static_cast<int>(X.size()); }
};

Eigen::VectorXd internal_force(const FemModel& model, const Eigen::VectorXd& u);
double total_strain_energy(const FemModel& model, const Eigen::VectorXd& u);
Eigen::SparseMatrix<double> tangent_stiffness(const FemModel& model, const Eigen::VectorXd& u);

/// F = I + sum_i u_i (dN_i)^T at quadrature point `qp` of the element.
Eigen::Matrix2d element_deformation_gradient(const PolygonElement& element, int qp,
                                             const Eigen::VectorXd& u);

inline double end_compliance(const Eigen::VectorXd& f_ext, const Eigen::VectorXd& u) {
    return f_ext.dot(u);
}

struct NewtonConfig {
    int load_steps = 10;
    double min_step = 1.0 / 256.0;
    double tol_rel = 1e-6;
    double tol_abs = 1e-10;  // N
    int max_iterations = 25;
    // Whole-solve budget across all increments, halvings and Uzawa rounds;
    // exhausting it fails the solve (the candidate is penalized upstream).
    int max_total_iterations = 400;
    bool record_steps = false;  // keep converged per-step displacements
};

struct SolveStats {
    int newton_iterations = 0;
    int load_steps = 0;
    int halvings = 0;
    int uzawa_iterations = 0;
    bool uzawa_exhausted = false;  // hit max outer iterations above gap_tol
    double max_penetration = 0.0;
    int active_pairs = 0;
    double final_residual = 0.0;
    std::vector<double> last_step_residuals;    // residual norms of the final increment
    std::vector<double> uzawa_penetrations;     // per-outer max penetration, final increment
    std::vector<double> failed_step_residuals;  // residuals of the last failed attempt
    std::string failure;
};

struct StepRecord {
    double load_factor = 0.0;
    Eigen::VectorXd u;
};

struct SolverState {
    Eigen::VectorXd u;
    double load_factor = 0.0;
    bool converged = false;
    SolveStats stats;
    std::vector<StepRecord> steps;  // filled when NewtonConfig::record_steps
};

/// Contact may be null. The contact world indexes the same nodes as `model`.
SolverState newton_solve(const FemModel& model, ContactWorld* contact, const NewtonConfig& config);

}  // namespace mtop
