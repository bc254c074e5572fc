#include "morphtop/fsd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtop {

namespace {

double wrap_pi(double a) {
    a = std::fmod(a + M_PI, 2.0 * M_PI);
    if (a < 0.0) a += 2.0 * M_PI;
    return a - M_PI;
}

}  // namespace

ClosedCurve close_curve(const CurvePolyline& open) {
    ClosedCurve out;
    std::vector<Vec2> pts = open.points;

    // Drop exactly repeated consecutive points; detect pre-closed input.
    bool already_closed = open.closed;
    if (pts.size() >= 2 && (pts.front() - pts.back()).norm() == 0.0) {
        pts.pop_back();
        already_closed = true;
    }
    std::vector<Vec2> clean;
    for (const Vec2& p : pts) {
        if (clean.empty() || (p - clean.back()).norm() > 0.0) clean.push_back(p);
    }
    pts = std::move(clean);

    if (pts.size() < 3) {
        out.error = "curve needs at least 3 distinct points";
        return out;
    }

    const double perimeter = [&] {
        double L = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            L += (pts[(i + 1) % pts.size()] - pts[i]).norm();
        }
        return L;
    }();
    const double area = polygon_signed_area(pts);
    if (std::abs(area) <= 1e-12 * perimeter * perimeter) {
        out.error = "closure degenerates to a zero-area polygon";
        return out;
    }

    if (!already_closed) {
        // The closing chord is (last, first); it must not cross the curve.
        const int m = static_cast<int>(pts.size());
        const Vec2& c0 = pts[static_cast<std::size_t>(m - 1)];
        const Vec2& c1 = pts[0];
        for (int k = 0; k + 1 < m; ++k) {
            if (k == 0 || k == m - 2) continue;  // edges sharing an endpoint with the chord
            if (segments_properly_intersect(c0, c1, pts[static_cast<std::size_t>(k)],
                                            pts[static_cast<std::size_t>(k + 1)])) {
                out.error = "closing chord intersects the curve";
                return out;
            }
        }
    }

    if (area > 0.0) {
        // Counter-clockwise: reverse the cyclic order, keep the first point first.
        std::reverse(pts.begin() + 1, pts.end());
    }

    out.curve.points = std::move(pts);
    out.curve.closed = true;
    out.ok = true;
    return out;
}

FourierDescriptor compute_fsd(const CurvePolyline& closed, int coefficients) {
    if (!closed.closed) throw std::invalid_argument("compute_fsd: curve must be closed");
    const int m = static_cast<int>(closed.points.size());
    if (m < 3) throw std::invalid_argument("compute_fsd: need >= 3 points");
    if (coefficients < 1) throw std::invalid_argument("compute_fsd: need >= 1 coefficient");

    std::vector<double> edge_len(static_cast<std::size_t>(m));
    std::vector<double> psi(static_cast<std::size_t>(m));  // edge direction angles
    double L = 0.0;
    for (int k = 0; k < m; ++k) {
        const Vec2 e = closed.points[static_cast<std::size_t>((k + 1) % m)] -
                       closed.points[static_cast<std::size_t>(k)];
        edge_len[static_cast<std::size_t>(k)] = e.norm();
        if (edge_len[static_cast<std::size_t>(k)] <= 0.0) {
            throw std::invalid_argument("compute_fsd: repeated consecutive points");
        }
        psi[static_cast<std::size_t>(k)] = std::atan2(e.y(), e.x());
        L += edge_len[static_cast<std::size_t>(k)];
    }

    // Turning angle at vertex k (between edge k-1 and edge k), placed at the
    // normalized arc position of that vertex; vertex 0 is counted at t = 2*pi.
    std::vector<double> dphi(static_cast<std::size_t>(m));
    std::vector<double> t(static_cast<std::size_t>(m));
    double arc = 0.0;
    double total_turning = 0.0;
    for (int k = 1; k <= m; ++k) {
        arc += edge_len[static_cast<std::size_t>(k - 1)];
        const double turn = wrap_pi(psi[static_cast<std::size_t>(k % m)] -
                                    psi[static_cast<std::size_t>(k - 1)]);
        dphi[static_cast<std::size_t>(k - 1)] = turn;
        t[static_cast<std::size_t>(k - 1)] = 2.0 * M_PI * arc / L;
        total_turning += turn;
    }

    FourierDescriptor d;
    d.A.resize(coefficients);
    d.B.resize(coefficients);
    d.length = L;
    d.theta = psi[0];
    for (int n = 1; n <= coefficients; ++n) {
        double a = 0.0;
        double b = 0.0;
        for (int k = 0; k < m; ++k) {
            a += dphi[static_cast<std::size_t>(k)] * std::sin(n * t[static_cast<std::size_t>(k)]);
            b += dphi[static_cast<std::size_t>(k)] * std::cos(n * t[static_cast<std::size_t>(k)]);
        }
        d.A[n - 1] = -a / (n * M_PI);
        // The -(total_turning + 2*pi) term vanishes for clockwise simple curves.
        d.B[n - 1] = (b - (total_turning + 2.0 * M_PI)) / (n * M_PI);
    }
    return d;
}

FsdErrors fsd_errors(const FourierDescriptor& desired, const FourierDescriptor& actual) {
    if (desired.coefficient_count() != actual.coefficient_count()) {
        throw std::invalid_argument("fsd_errors: coefficient counts differ");
    }
    FsdErrors e;
    e.a_err = (desired.A - actual.A).squaredNorm();
    e.b_err = (desired.B - actual.B).squaredNorm();
    const double dl = desired.length - actual.length;
    e.length_err = dl * dl;
    const double dt = wrap_pi(desired.theta - actual.theta);
    e.theta_err = dt * dt;
    return e;
}

double fsd_objective(const FsdErrors& e, const ObjectiveWeights& w) {
    return w.lambda_a * e.a_err + w.lambda_b * e.b_err + w.lambda_length * e.length_err +
           w.lambda_theta * e.theta_err;
}

double fsd_objective(const FourierDescriptor& desired, const FourierDescriptor& actual,
                     const ObjectiveWeights& w) {
    return fsd_objective(fsd_errors(desired, actual), w);
}

ShapeChange shape_invariants(const FourierDescriptor& desired, const FourierDescriptor& actual,
                             bool per_mode_denominator) {
    if (desired.coefficient_count() != actual.coefficient_count()) {
        throw std::invalid_argument("shape_invariants: coefficient counts differ");
    }
    const int n = desired.coefficient_count();
    ShapeChange out;

    auto radius = [](const FourierDescriptor& d, int m) {
        return std::hypot(d.A[m], d.B[m]);
    };
    const double r_last = radius(desired, n - 1);
    if (!per_mode_denominator && r_last == 0.0) {
        return out;  // invalid: reference invariant vanishes
    }
    double sum = 0.0;
    for (int m = 0; m < n; ++m) {
        const double denom = per_mode_denominator ? radius(desired, m) : r_last;
        if (denom == 0.0) return out;
        sum += std::abs(radius(desired, m) - radius(actual, m)) / denom;
    }
    out.zeta_shape = sum / n;
    out.zeta_length = std::abs(desired.length - actual.length) / desired.length;
    out.valid = true;
    return out;
}

}  // namespace mtop
