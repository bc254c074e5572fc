#include "morphtop/material.hpp"

#include <cmath>

namespace mtop {

namespace {

double checked_det(const Eigen::Matrix2d& F) {
    const double J = F.determinant();
    if (!(J > 0.0)) {
        throw ElementInversionError("element inversion: det F <= 0");
    }
    return J;
}

}  // namespace

Eigen::Matrix2d cauchy_stress(const Eigen::Matrix2d& F, const MaterialParams& mat) {
    const double J = checked_det(F);
    const Eigen::Matrix2d I = Eigen::Matrix2d::Identity();
    return (mat.mu() / J) * (F * F.transpose() - I) + (mat.lambda() / J) * std::log(J) * I;
}

Eigen::Matrix2d piola_stress(const Eigen::Matrix2d& F, const MaterialParams& mat) {
    const double J = checked_det(F);
    const Eigen::Matrix2d Finv_T = F.inverse().transpose();
    return mat.mu() * F + (mat.lambda() * std::log(J) - mat.mu()) * Finv_T;
}

double strain_energy_density(const Eigen::Matrix2d& F, const MaterialParams& mat) {
    const double J = checked_det(F);
    const double lnJ = std::log(J);
    const double trC = (F.transpose() * F).trace();
    return 0.5 * mat.mu() * (trC - 2.0) - mat.mu() * lnJ + 0.5 * mat.lambda() * lnJ * lnJ;
}

}  // namespace mtop
