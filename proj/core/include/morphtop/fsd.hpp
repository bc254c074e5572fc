#pragma once

/**
 * @file fsd.hpp
 * @brief Fourier Shape Descriptors of closed curves.
 *
 * A polyline is closed with a straight chord, normalized to clockwise
 * traversal and expanded in the harmonics of its cumulative turning function
 * parameterized by normalized arc length. The (A_n, B_n) coefficients depend
 * only on the turning angles and their arc positions, so they are invariant
 * to translation, rotation and uniform scaling; length L and the initial
 * orientation theta carry the remaining information separately.
 */

#include "morphtop/geom.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace mtop {

struct CurvePolyline {
    std::vector<Vec2> points;
    bool closed = false;
};

struct FourierDescriptor {
    Eigen::VectorXd A;  // rad
    Eigen::VectorXd B;  // rad
    double length = 0.0;  // mm
    double theta = 0.0;   // rad, direction of the first segment

    int coefficient_count() const { return static_cast<int>(A.size()); }
};

struct ObjectiveWeights {
    double lambda_a = 100.0;
    double lambda_b = 100.0;
    double lambda_length = 1.0;
    double lambda_theta = 1.0;
};

struct ClosedCurve {
    CurvePolyline curve;
    bool ok = false;
    std::string error;
};

/// Appends the chord from the last point to the first (unless the input is
/// already closed), rejects closures whose chord crosses the curve or whose
/// area degenerates, and normalizes the traversal to clockwise keeping the
/// first input point first.
ClosedCurve close_curve(const CurvePolyline& open);

FourierDescriptor compute_fsd(const CurvePolyline& closed, int coefficients);

struct FsdErrors {
    double a_err = 0.0;
    double b_err = 0.0;
    double length_err = 0.0;
    double theta_err = 0.0;  // wrapped angular difference, squared
};

FsdErrors fsd_errors(const FourierDescriptor& desired, const FourierDescriptor& actual);

double fsd_objective(const FsdErrors& e, const ObjectiveWeights& w);
double fsd_objective(const FourierDescriptor& desired, const FourierDescriptor& actual,
                     const ObjectiveWeights& w);

struct ShapeChange {
    double zeta_shape = 0.0;   // relative change in shape (fraction, not %)
    double zeta_length = 0.0;  // relative change in length
    bool valid = false;        // false when the reference invariant vanishes
};

/// zeta_s = (1/n) sum_m |R_m^d - R_m^a| / R_n^d with R_m = sqrt(A_m^2+B_m^2).
/// `per_mode_denominator` divides by R_m^d instead of the fixed R_n^d.
ShapeChange shape_invariants(const FourierDescriptor& desired, const FourierDescriptor& actual,
                             bool per_mode_denominator = false);

}  // namespace mtop
