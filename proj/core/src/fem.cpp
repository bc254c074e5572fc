#include "morphtop/fem.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtop {

namespace {

// Degree-2 triangle rule: 3 interior points, weight area/3 each.
constexpr double kTriBary[3][3] = {
    {2.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0},
    {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0},
    {1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0},
};

void append_triangle(PolygonQuadrature& q, const Vec2& a, const Vec2& b, const Vec2& c) {
    const double area = 0.5 * cross2(b - a, c - a);
    if (area <= 0.0) return;
    for (const auto& bc : kTriBary) {
        q.points.push_back(bc[0] * a + bc[1] * b + bc[2] * c);
        q.weights.push_back(area / 3.0);
    }
}

}  // namespace

PolygonQuadrature polygon_quadrature(const std::vector<Vec2>& polygon) {
    const int n = static_cast<int>(polygon.size());
    if (n < 3) throw std::invalid_argument("polygon_quadrature: need >= 3 vertices");
    const double area = polygon_signed_area(polygon);
    if (!(area > 0.0)) {
        throw std::invalid_argument("polygon_quadrature: polygon must be CCW with positive area");
    }

    // Centroid fan when the centroid sees every edge from the inside.
    const Vec2 c = polygon_centroid(polygon);
    bool fan_ok = true;
    for (int i = 0; i < n; ++i) {
        const Vec2& a = polygon[static_cast<std::size_t>(i)];
        const Vec2& b = polygon[static_cast<std::size_t>((i + 1) % n)];
        if (cross2(a - c, b - c) <= 1e-12 * area) {
            fan_ok = false;
            break;
        }
    }

    PolygonQuadrature q;
    if (fan_ok) {
        for (int i = 0; i < n; ++i) {
            append_triangle(q, c, polygon[static_cast<std::size_t>(i)],
                            polygon[static_cast<std::size_t>((i + 1) % n)]);
        }
    } else {
        for (const auto& tri : triangulate_polygon(polygon)) {
            append_triangle(q, polygon[static_cast<std::size_t>(tri[0])],
                            polygon[static_cast<std::size_t>(tri[1])],
                            polygon[static_cast<std::size_t>(tri[2])]);
        }
    }
    return q;
}

PolygonElement::PolygonElement(std::vector<int> node_ids, std::vector<Vec2> corners)
    : node_ids_(std::move(node_ids)), corners_(std::move(corners)) {
    if (node_ids_.size() != corners_.size()) {
        throw std::invalid_argument("PolygonElement: ids/corners size mismatch");
    }
    area_ = polygon_signed_area(corners_);
    const PolygonQuadrature q = polygon_quadrature(corners_);
    quad_.reserve(q.points.size());
    for (std::size_t i = 0; i < q.points.size(); ++i) {
        MvcEval eval = mean_value_shape(corners_, q.points[i]);
        quad_.push_back({q.points[i], q.weights[i], std::move(eval.values), std::move(eval.grad)});
    }
}

namespace {

Eigen::Matrix2d deformation_gradient(const PolygonElement::QuadPoint& qp,
                                     const std::vector<int>& ids, const Eigen::VectorXd& u) {
    Eigen::Matrix2d F = Eigen::Matrix2d::Identity();
    for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
        const int n = ids[static_cast<std::size_t>(i)];
        F(0, 0) += u[2 * n] * qp.dN(i, 0);
        F(0, 1) += u[2 * n] * qp.dN(i, 1);
        F(1, 0) += u[2 * n + 1] * qp.dN(i, 0);
        F(1, 1) += u[2 * n + 1] * qp.dN(i, 1);
    }
    return F;
}

void add_material_stiffness(const FemModel& model, const Eigen::VectorXd& u,
                            std::vector<Eigen::Triplet<double>>& trip) {
    const double t = model.material.thickness;
    const double mu = model.material.mu();
    const double lambda = model.material.lambda();

    for (const PolygonElement& el : model.elements) {
        const auto& ids = el.node_ids();
        const int nv = static_cast<int>(ids.size());
        for (const auto& qp : el.quadrature()) {
            const Eigen::Matrix2d F = deformation_gradient(qp, ids, u);
            const double J = F.determinant();
            if (!(J > 0.0)) throw ElementInversionError("tangent: det F <= 0");
            const double lnJ = std::log(J);
            const Eigen::Matrix2d FinvT = F.inverse().transpose();
            const double w = qp.weight * t;
            const double c3 = mu - lambda * lnJ;

            Eigen::MatrixX2d g(nv, 2);  // g_i = F^{-T} dN_i
            for (int i = 0; i < nv; ++i) {
                const Eigen::Vector2d dNi(qp.dN(i, 0), qp.dN(i, 1));
                g.row(i) = (FinvT * dNi).transpose();
            }
            for (int i = 0; i < nv; ++i) {
                const Eigen::Vector2d dNi(qp.dN(i, 0), qp.dN(i, 1));
                const Eigen::Vector2d gi = g.row(i).transpose();
                for (int j = 0; j < nv; ++j) {
                    const Eigen::Vector2d dNj(qp.dN(j, 0), qp.dN(j, 1));
                    const Eigen::Vector2d gj = g.row(j).transpose();
                    const double diag = mu * dNi.dot(dNj);
                    Eigen::Matrix2d block = lambda * gi * gj.transpose() + c3 * gj * gi.transpose();
                    block(0, 0) += diag;
                    block(1, 1) += diag;
                    block *= w;
                    const int ni = ids[static_cast<std::size_t>(i)];
                    const int nj = ids[static_cast<std::size_t>(j)];
                    for (int a = 0; a < 2; ++a) {
                        for (int b = 0; b < 2; ++b) {
                            trip.emplace_back(2 * ni + a, 2 * nj + b, block(a, b));
                        }
                    }
                }
            }
        }
    }
}

std::vector<Vec2> current_positions(const FemModel& model, const Eigen::VectorXd& u) {
    std::vector<Vec2> x(model.X.size());
    for (std::size_t i = 0; i < model.X.size(); ++i) {
        const int n = static_cast<int>(i);
        x[i] = model.X[i] + Vec2(u[2 * n], u[2 * n + 1]);
    }
    return x;
}

}  // namespace

Eigen::VectorXd internal_force(const FemModel& model, const Eigen::VectorXd& u) {
    Eigen::VectorXd f = Eigen::VectorXd::Zero(model.dof_count());
    const double t = model.material.thickness;
    for (const PolygonElement& el : model.elements) {
        const auto& ids = el.node_ids();
        for (const auto& qp : el.quadrature()) {
            const Eigen::Matrix2d F = deformation_gradient(qp, ids, u);
            const Eigen::Matrix2d P = piola_stress(F, model.material);
            const double w = qp.weight * t;
            for (int i = 0; i < static_cast<int>(ids.size()); ++i) {
                const int n = ids[static_cast<std::size_t>(i)];
                const Eigen::Vector2d dNi(qp.dN(i, 0), qp.dN(i, 1));
                f.segment<2>(2 * n) += w * (P * dNi);
            }
        }
    }
    return f;
}

double total_strain_energy(const FemModel& model, const Eigen::VectorXd& u) {
    double energy = 0.0;
    const double t = model.material.thickness;
    for (const PolygonElement& el : model.elements) {
        for (const auto& qp : el.quadrature()) {
            const Eigen::Matrix2d F = deformation_gradient(qp, el.node_ids(), u);
            energy += qp.weight * t * strain_energy_density(F, model.material);
        }
    }
    return energy;
}

Eigen::SparseMatrix<double> tangent_stiffness(const FemModel& model, const Eigen::VectorXd& u) {
    std::vector<Eigen::Triplet<double>> trip;
    add_material_stiffness(model, u, trip);
    Eigen::SparseMatrix<double> K(model.dof_count(), model.dof_count());
    K.setFromTriplets(trip.begin(), trip.end());
    return K;
}

Eigen::Matrix2d element_deformation_gradient(const PolygonElement& element, int qp,
                                             const Eigen::VectorXd& u) {
    return deformation_gradient(element.quadrature()[static_cast<std::size_t>(qp)],
                                element.node_ids(), u);
}

SolverState newton_solve(const FemModel& model, ContactWorld* contact,
                         const NewtonConfig& config) {
    SolverState state;
    state.u = Eigen::VectorXd::Zero(model.dof_count());
    const bool with_contact = contact && contact->segment_count() > 0;
    if (contact) contact->reset_multipliers();

    // Free / constrained dof bookkeeping.
    std::vector<int> full_to_free(static_cast<std::size_t>(model.dof_count()), 0);
    for (const DirichletBC& bc : model.dirichlet) {
        full_to_free[static_cast<std::size_t>(2 * bc.node + bc.comp)] = -1;
    }
    std::vector<int> free_dofs;
    for (int d = 0; d < model.dof_count(); ++d) {
        if (full_to_free[static_cast<std::size_t>(d)] == 0) {
            full_to_free[static_cast<std::size_t>(d)] = static_cast<int>(free_dofs.size());
            free_dofs.push_back(d);
        }
    }
    const int nfree = static_cast<int>(free_dofs.size());
    const double f_ext_norm = model.f_ext.norm();

    double diag = 0.0;
    {
        Vec2 lo = model.X.empty() ? Vec2::Zero() : model.X.front();
        Vec2 hi = lo;
        for (const Vec2& p : model.X) {
            lo = lo.cwiseMin(p);
            hi = hi.cwiseMax(p);
        }
        diag = (hi - lo).norm();
    }
    const double step_cap = std::max(2.0 * diag, 1.0);

    auto free_norm = [&](const Eigen::VectorXd& r) {
        double s = 0.0;
        for (int d : free_dofs) s += r[d] * r[d];
        return std::sqrt(s);
    };
    auto apply_prescribed = [&](Eigen::VectorXd& u, double lf) {
        for (const DirichletBC& bc : model.dirichlet) {
            u[2 * bc.node + bc.comp] = lf * bc.value;
        }
    };
    auto assemble_residual = [&](const Eigen::VectorXd& u, double lf) {
        Eigen::VectorXd r = internal_force(model, u);
        if (with_contact) contact->add_force(current_positions(model, u), r);
        r -= lf * model.f_ext;
        return r;
    };

    // One Newton loop at fixed load factor and fixed multipliers. A bounded
    // backtracking line search on the residual norm tames the steps near
    // contact onset, where the tangent can be nearly singular.
    auto newton_inner = [&](Eigen::VectorXd& u, double lf, std::vector<double>& res_hist) {
        res_hist.clear();
        auto try_residual_norm = [&](const Eigen::VectorXd& uu, Eigen::VectorXd& r) {
            try {
                r = assemble_residual(uu, lf);
            } catch (const ElementInversionError&) {
                return std::numeric_limits<double>::infinity();
            } catch (const std::domain_error&) {
                return std::numeric_limits<double>::infinity();
            }
            return free_norm(r);
        };

        Eigen::VectorXd r;
        double rn = try_residual_norm(u, r);
        if (!std::isfinite(rn)) return false;
        const double rn_first = rn;
        // Relative scale: the external load or, for displacement- and
        // contact-driven increments, the increment's initial imbalance.
        const double tol =
            config.tol_abs + config.tol_rel * std::max(lf * f_ext_norm, rn_first);
        // Monotone backtracking can asymptote to a contact-onset kink from
        // the open side; a couple of watchdog (non-monotone) full steps let
        // the iterate cross the wall so the active tangent takes over.
        int watchdog_left = 2;

        for (int iter = 0; iter <= config.max_iterations; ++iter) {
            res_hist.push_back(rn);
            state.stats.final_residual = rn;
            if (rn <= tol) return true;
            if (iter == config.max_iterations) return false;

            std::vector<Eigen::Triplet<double>> trip;
            try {
                add_material_stiffness(model, u, trip);
                if (with_contact) contact->add_stiffness(current_positions(model, u), trip);
            } catch (const ElementInversionError&) {
                return false;
            } catch (const std::domain_error&) {
                return false;
            }
            std::vector<Eigen::Triplet<double>> reduced;
            reduced.reserve(trip.size());
            for (const auto& t : trip) {
                const int fr = full_to_free[static_cast<std::size_t>(t.row())];
                const int fc = full_to_free[static_cast<std::size_t>(t.col())];
                if (fr >= 0 && fc >= 0) reduced.emplace_back(fr, fc, t.value());
            }
            Eigen::SparseMatrix<double> K(nfree, nfree);
            K.setFromTriplets(reduced.begin(), reduced.end());
            Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(K);
            if (lu.info() != Eigen::Success) return false;
            Eigen::VectorXd rhs(nfree);
            for (int i = 0; i < nfree; ++i) rhs[i] = -r[free_dofs[static_cast<std::size_t>(i)]];
            Eigen::VectorXd du = lu.solve(rhs);
            if (lu.info() != Eigen::Success || !du.allFinite()) return false;
            const double dn = du.norm();
            if (dn > step_cap) du *= step_cap / dn;

            // Backtracking only matters near contact kinks; the smooth
            // elastic response is best served by full Newton steps.
            const int max_backtrack = with_contact ? 7 : 1;
            double alpha = 1.0;
            bool accepted = false;
            double rn_full = std::numeric_limits<double>::infinity();
            Eigen::VectorXd u_full, r_full;
            Eigen::VectorXd u_try, r_try;
            for (int ls = 0; ls < max_backtrack; ++ls) {
                u_try = u;
                for (int i = 0; i < nfree; ++i) {
                    u_try[free_dofs[static_cast<std::size_t>(i)]] += alpha * du[i];
                }
                const double rn_try = try_residual_norm(u_try, r_try);
                if (ls == 0) {
                    rn_full = rn_try;
                    u_full = u_try;
                    r_full = r_try;
                }
                const bool ok = with_contact ? (rn_try <= tol || rn_try < rn)
                                             : std::isfinite(rn_try);
                if (ok) {
                    u = u_try;
                    r = r_try;
                    rn = rn_try;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted && watchdog_left > 0 && std::isfinite(rn_full)) {
                u = u_full;
                r = r_full;
                rn = rn_full;
                accepted = true;
                --watchdog_left;
            }
            ++state.stats.newton_iterations;
            if (!accepted) return false;  // inversion or no descent left
        }
        return false;
    };

    // One load increment: Newton plus the Uzawa multiplier loop.
    auto solve_increment = [&](Eigen::VectorXd& u, double lf, std::vector<double>& res_hist) {
        apply_prescribed(u, lf);
        const int max_outer = with_contact ? std::max(1, contact->params().max_uzawa) : 1;
        state.stats.uzawa_penetrations.clear();
        for (int outer = 1; outer <= max_outer; ++outer) {
            if (!newton_inner(u, lf, res_hist)) return false;
            if (!with_contact) return true;
            const std::vector<Vec2> x = current_positions(model, u);
            const double pen = contact->max_penetration(x);
            state.stats.uzawa_penetrations.push_back(pen);
            state.stats.uzawa_iterations = std::max(state.stats.uzawa_iterations, outer);
            if (pen <= contact->params().gap_tol) return true;
            if (outer == max_outer) {
                state.stats.uzawa_exhausted = true;
                return true;
            }
            contact->update_multipliers(x);
        }
        return true;
    };

    const double dlf0 = 1.0 / std::max(1, config.load_steps);
    double lf = 0.0;
    double dlf = dlf0;
    int successes = 0;
    std::vector<double> res_hist;

    while (lf < 1.0 - 1e-12) {
        if (state.stats.newton_iterations >= config.max_total_iterations) {
            state.stats.failure = "iteration budget exhausted";
            state.load_factor = lf;
            return state;
        }
        const double target = std::min(1.0, lf + dlf);
        Eigen::VectorXd u_save = state.u;
        std::unordered_map<std::int64_t, double> lam_save;
        if (with_contact) lam_save = contact->multipliers();

        if (solve_increment(state.u, target, res_hist)) {
            lf = target;
            ++state.stats.load_steps;
            state.stats.last_step_residuals = res_hist;
            if (config.record_steps) state.steps.push_back({lf, state.u});
            if (++successes >= 3 && dlf < dlf0) {
                dlf = std::min(dlf0, 2.0 * dlf);
                successes = 0;
            }
        } else {
            state.u = u_save;
            if (with_contact) contact->set_multipliers(std::move(lam_save));
            state.stats.failed_step_residuals = res_hist;
            dlf *= 0.5;
            successes = 0;
            ++state.stats.halvings;
            if (dlf < config.min_step * (1.0 - 1e-12)) {
                state.stats.failure = "load step underflow";
                state.load_factor = lf;
                return state;
            }
        }
    }

    state.load_factor = 1.0;
    state.converged = true;
    if (with_contact) {
        const std::vector<Vec2> x = current_positions(model, state.u);
        state.stats.max_penetration = contact->max_penetration(x);
        state.stats.active_pairs = contact->active_pair_count(x);
    }
    return state;
}

}  // namespace mtop
