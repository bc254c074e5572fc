#pragma once

// Plane-strain neo-Hookean material.

#include <Eigen/Dense>
#include <stdexcept>

namespace mtop {

/// Raised when det F <= 0 at a quadrature point; aborts the Newton step and
/// triggers load-step halving.
struct ElementInversionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaterialParams {
    double E = 2100.0;      // MPa
    double nu = 0.33;
    double thickness = 1.0; // mm

    double mu() const { return E / (2.0 * (1.0 + nu)); }
    double lambda() const { return 2.0 * mu() * nu / (1.0 - 2.0 * nu); }
};

/// Cauchy stress sigma = (mu/J)(F F^T - I) + (lambda/J) ln(J) I.
Eigen::Matrix2d cauchy_stress(const Eigen::Matrix2d& F, const MaterialParams& mat);

/// First Piola-Kirchhoff stress P = mu F + (lambda ln J - mu) F^{-T}.
Eigen::Matrix2d piola_stress(const Eigen::Matrix2d& F, const MaterialParams& mat);

/// W = mu/2 (tr(F^T F) - 2) - mu ln J + lambda/2 (ln J)^2, per unit ref. area.
double strain_energy_density(const Eigen::Matrix2d& F, const MaterialParams& mat);

}  // namespace mtop
