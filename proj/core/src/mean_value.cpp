#include "morphtop/mean_value.hpp"

#include <cmath>

namespace mtop {

// Floater's mean value coordinates. With s_i = v_i - p, r_i = |s_i|,
// t_i = tan(alpha_i / 2) for the signed angle alpha_i spanned by edge i at p:
//
//   t_i = C_i / (h_i + D_i),   C_i = s_i x s_{i+1},  D_i = s_i . s_{i+1},
//   h_i = r_i r_{i+1},         w_i = (t_{i-1} + t_i) / r_i,  N_i = w_i / sum w.
//
// The half-angle form is stable for nearly collinear configurations; it is
// singular only when p sits on an edge (h + D -> 0), which is reported as a
// boundary evaluation error.
MvcEval mean_value_shape(const std::vector<Vec2>& polygon, const Vec2& p) {
    const int n = static_cast<int>(polygon.size());
    if (n < 3) throw std::invalid_argument("mean_value_shape: need >= 3 vertices");

    double diameter2 = 0.0;
    for (int i = 0; i < n; ++i) {
        diameter2 = std::max(diameter2, (polygon[static_cast<std::size_t>(i)] - polygon[0]).squaredNorm());
    }
    const double tol = 1e-12 * std::sqrt(diameter2);

    std::vector<Vec2> s(static_cast<std::size_t>(n));
    std::vector<double> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        s[static_cast<std::size_t>(i)] = polygon[static_cast<std::size_t>(i)] - p;
        r[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(i)].norm();
        if (r[static_cast<std::size_t>(i)] <= tol) {
            throw BoundaryPointError("mean_value_shape: evaluation at a polygon vertex");
        }
    }

    std::vector<double> t(static_cast<std::size_t>(n));
    std::vector<Vec2> grad_t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        const Vec2& si = s[static_cast<std::size_t>(i)];
        const Vec2& sj = s[static_cast<std::size_t>(j)];
        const double ri = r[static_cast<std::size_t>(i)];
        const double rj = r[static_cast<std::size_t>(j)];
        const double C = cross2(si, sj);
        const double D = si.dot(sj);
        const double h = ri * rj;
        const double denom = h + D;
        if (denom <= tol * (ri + rj)) {
            throw BoundaryPointError("mean_value_shape: evaluation on a polygon edge");
        }
        t[static_cast<std::size_t>(i)] = C / denom;

        // d/dp of C, D, h (note d s / d p = -I).
        const Vec2 gC = perp(sj - si);
        const Vec2 gD = -(si + sj);
        const Vec2 gh = -(rj / ri) * si - (ri / rj) * sj;
        grad_t[static_cast<std::size_t>(i)] = gC / denom - (C / (denom * denom)) * (gh + gD);
    }

    Eigen::VectorXd w(n);
    Eigen::Matrix<double, Eigen::Dynamic, 2> grad_w(n, 2);
    for (int i = 0; i < n; ++i) {
        const int prev = (i + n - 1) % n;
        const double ri = r[static_cast<std::size_t>(i)];
        const double tsum = t[static_cast<std::size_t>(prev)] + t[static_cast<std::size_t>(i)];
        w[i] = tsum / ri;
        // grad(1/r_i) = s_i / r_i^3
        const Vec2 g = (grad_t[static_cast<std::size_t>(prev)] + grad_t[static_cast<std::size_t>(i)]) / ri +
                       tsum * s[static_cast<std::size_t>(i)] / (ri * ri * ri);
        grad_w.row(i) = g.transpose();
    }

    const double W = w.sum();
    const Eigen::RowVector2d gW = grad_w.colwise().sum();

    MvcEval out;
    out.values = w / W;
    out.grad.resize(n, 2);
    for (int i = 0; i < n; ++i) {
        out.grad.row(i) = (grad_w.row(i) - out.values[i] * gW) / W;
    }
    return out;
}

}  // namespace mtop
