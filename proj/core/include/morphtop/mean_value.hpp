#pragma once

/**
 * @file mean_value.hpp
 * @brief Mean value shape functions on arbitrary simple polygons.
 *
 * Values and gradients are evaluated at interior points of a (possibly
 * concave) simple polygon. The functions form a partition of unity, reproduce
 * linear fields exactly and are smooth inside the polygon, which makes them
 * usable as finite element interpolants on the concave boundary elements the
 * smoothing step produces.
 */

#include "morphtop/geom.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace mtop {

struct BoundaryPointError : std::domain_error {
    using std::domain_error::domain_error;
};

struct MvcEval {
    Eigen::VectorXd values;                         // one per vertex, sums to 1
    Eigen::Matrix<double, Eigen::Dynamic, 2> grad;  // row i = grad of N_i
};

/// Throws BoundaryPointError when p lies on the polygon boundary.
MvcEval mean_value_shape(const std::vector<Vec2>& polygon, const Vec2& p);

}  // namespace mtop
