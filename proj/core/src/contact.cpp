#include "morphtop/contact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace mtop {

namespace {

// Self pairs closer than this along their loop are excluded: a honeycomb
// notch or corner spans up to ~6 boundary segments, and Gauss points of one
// flank sit "behind" nearby flanks at through-solid depths the penetration
// cap alone cannot always reject. Genuine folding contact joins segments
// that are topologically much farther apart.
constexpr int kSelfExclusionWindow = 6;

}  // namespace

Projection project_point_segment(const Vec2& x, const Vec2& y1, const Vec2& y2) {
    Projection p;
    const Vec2 d = y2 - y1;
    const double len2 = d.squaredNorm();
    double t = 0.0;
    if (len2 > 0.0) t = (x - y1).dot(d) / len2;
    const double tc = std::clamp(t, 0.0, 1.0);
    p.point = y1 + tc * d;
    p.xi = 2.0 * tc - 1.0;
    p.clamped = (t != tc);
    const double len = std::sqrt(len2);
    const Vec2 tau = (len > 0.0) ? Vec2(d / len) : Vec2(1.0, 0.0);
    p.normal = Vec2(tau.y(), -tau.x());  // right of the direction = outward
    p.gap = (x - p.point).dot(p.normal);
    return p;
}

Projection project_point_polyline(const Vec2& x, const std::vector<Vec2>& points, bool closed) {
    const int n = static_cast<int>(points.size());
    if (n < 2) throw std::invalid_argument("project_point_polyline: empty target");
    const int nseg = closed ? n : n - 1;
    Projection best;
    double best_dist = 0.0;
    for (int k = 0; k < nseg; ++k) {
        Projection pr = project_point_segment(x, points[static_cast<std::size_t>(k)],
                                              points[static_cast<std::size_t>((k + 1) % n)]);
        pr.segment = k;
        const double dist = (x - pr.point).norm();
        // Ascending k keeps the lower segment id on ties.
        if (best.segment < 0 || dist < best_dist) {
            best = pr;
            best_dist = dist;
        }
    }
    return best;
}

Projection project_point_circle(const Vec2& x, const RigidCircle& circle) {
    const Vec2 d = x - circle.center;
    const double r = d.norm();
    if (r <= 1e-14 * std::max(1.0, circle.radius)) {
        throw std::domain_error("project_point_circle: point coincides with the circle center");
    }
    Projection p;
    p.normal = d / r;
    p.point = circle.center + circle.radius * p.normal;
    p.gap = r - circle.radius;
    p.xi = 0.0;
    p.segment = -1;
    p.clamped = false;
    return p;
}

Vec2 contact_traction(double gap, const Vec2& normal, double eps, double lambda) {
    if (!(eps > 0.0)) throw std::invalid_argument("contact_traction: eps must be > 0");
    const double pressure = lambda - eps * gap;
    return pressure > 0.0 ? Vec2(pressure * normal) : Vec2(Vec2::Zero());
}

ContactWorld::ContactWorld(std::vector<std::vector<int>> loops, std::vector<RigidCircle> circles,
                           ContactParams params)
    : loops_(std::move(loops)), circles_(std::move(circles)), params_(params) {
    for (int l = 0; l < static_cast<int>(loops_.size()); ++l) {
        const auto& loop = loops_[static_cast<std::size_t>(l)];
        const int m = static_cast<int>(loop.size());
        if (m < 2) continue;
        for (int k = 0; k < m; ++k) {
            Segment s;
            s.loop = l;
            s.index = k;
            s.n0 = loop[static_cast<std::size_t>(k)];
            s.n1 = loop[static_cast<std::size_t>((k + 1) % m)];
            segs_.push_back(s);
        }
    }
}

std::vector<ContactPair> ContactWorld::detect_pairs(const std::vector<Vec2>& x) const {
    std::vector<ContactPair> pairs;
    const int ns = static_cast<int>(segs_.size());
    if (ns == 0) return pairs;

    const double sr = params_.search_radius;
    double max_len = 0.0;
    std::vector<Vec2> p0(static_cast<std::size_t>(ns)), p1(static_cast<std::size_t>(ns));
    for (int i = 0; i < ns; ++i) {
        p0[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(segs_[static_cast<std::size_t>(i)].n0)];
        p1[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(segs_[static_cast<std::size_t>(i)].n1)];
        max_len = std::max(max_len, (p1[static_cast<std::size_t>(i)] - p0[static_cast<std::size_t>(i)]).norm());
    }
    const double cell = std::max(sr, max_len) + 1e-12;

    // Broad phase: uniform hash of boxes inflated by sr/2 on each side.
    std::unordered_map<std::int64_t, std::vector<int>> grid;
    auto cell_key = [](int ix, int iy) {
        return (static_cast<std::int64_t>(ix) << 32) ^ (static_cast<std::int64_t>(iy) & 0xffffffffLL);
    };
    for (int i = 0; i < ns; ++i) {
        const Vec2 lo = p0[static_cast<std::size_t>(i)].cwiseMin(p1[static_cast<std::size_t>(i)]).array() - 0.5 * sr;
        const Vec2 hi = p0[static_cast<std::size_t>(i)].cwiseMax(p1[static_cast<std::size_t>(i)]).array() + 0.5 * sr;
        const int ix0 = static_cast<int>(std::floor(lo.x() / cell));
        const int ix1 = static_cast<int>(std::floor(hi.x() / cell));
        const int iy0 = static_cast<int>(std::floor(lo.y() / cell));
        const int iy1 = static_cast<int>(std::floor(hi.y() / cell));
        for (int ix = ix0; ix <= ix1; ++ix) {
            for (int iy = iy0; iy <= iy1; ++iy) {
                grid[cell_key(ix, iy)].push_back(i);
            }
        }
    }

    std::unordered_set<std::int64_t> seen;
    for (const auto& [key, list] : grid) {
        for (std::size_t a = 0; a < list.size(); ++a) {
            for (std::size_t b = a + 1; b < list.size(); ++b) {
                int i = std::min(list[a], list[b]);
                int j = std::max(list[a], list[b]);
                if (!seen.insert(static_cast<std::int64_t>(i) * ns + j).second) continue;
                const Segment& si = segs_[static_cast<std::size_t>(i)];
                const Segment& sj = segs_[static_cast<std::size_t>(j)];
                if (si.loop == sj.loop) {
                    const int m = static_cast<int>(loops_[static_cast<std::size_t>(si.loop)].size());
                    const int gap_idx = std::abs(si.index - sj.index);
                    if (std::min(gap_idx, m - gap_idx) <= kSelfExclusionWindow) continue;
                }
                const double d = segment_segment_distance(
                    p0[static_cast<std::size_t>(i)], p1[static_cast<std::size_t>(i)],
                    p0[static_cast<std::size_t>(j)], p1[static_cast<std::size_t>(j)]);
                if (d <= sr) {
                    pairs.push_back({i, j, -1});  // lower segment id is slave
                }
            }
        }
    }

    for (int k = 0; k < static_cast<int>(circles_.size()); ++k) {
        const RigidCircle& c = circles_[static_cast<std::size_t>(k)];
        for (int i = 0; i < ns; ++i) {
            const double d = point_segment_distance(c.center, p0[static_cast<std::size_t>(i)],
                                                    p1[static_cast<std::size_t>(i)]);
            if (d <= c.radius + sr) pairs.push_back({i, -1, k});
        }
    }

    std::sort(pairs.begin(), pairs.end(), [](const ContactPair& a, const ContactPair& b) {
        if (a.slave_segment != b.slave_segment) return a.slave_segment < b.slave_segment;
        if (a.rigid != b.rigid) return a.rigid < b.rigid;
        return a.master_segment < b.master_segment;
    });
    return pairs;
}

std::int64_t ContactWorld::multiplier_key(int slave, int q, int body) const {
    const std::int64_t bodies = static_cast<std::int64_t>(loops_.size() + circles_.size());
    return (static_cast<std::int64_t>(slave) * 2 + q) * bodies + body;
}

std::vector<ContactWorld::GaussContact> ContactWorld::evaluate_points(
    const std::vector<Vec2>& x) const {
    const auto pairs = detect_pairs(x);

    // Candidate master surfaces per slave segment.
    std::map<int, std::map<int, std::vector<int>>> self_candidates;  // slave -> body -> master segs
    std::map<int, std::vector<int>> rigid_candidates;                // slave -> circles
    for (const ContactPair& p : pairs) {
        if (p.mutual()) {
            rigid_candidates[p.slave_segment].push_back(p.rigid);
        } else {
            const int body = segs_[static_cast<std::size_t>(p.master_segment)].loop;
            self_candidates[p.slave_segment][body].push_back(p.master_segment);
        }
    }

    static const double kGauss[2] = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
    std::vector<GaussContact> out;
    const double pen_cap = params_.effective_cap();

    // Apparent penetrations beyond the cap are same-boundary artifacts (a
    // point separated from the master by solid material), not contact. On
    // this lattice genuine resolved penetrations stay far below the cap, so
    // the switch never sits near an active state.
    auto admissible = [&](const GaussContact& gc) { return -gc.proj.gap <= pen_cap; };

    auto slave_geometry = [&](int s, int q, GaussContact& gc) {
        const Segment& seg = segs_[static_cast<std::size_t>(s)];
        const Vec2 xa = x[static_cast<std::size_t>(seg.n0)];
        const Vec2 xb = x[static_cast<std::size_t>(seg.n1)];
        const Vec2 d = xb - xa;
        gc.ls = d.norm();
        if (gc.ls <= 0.0) return false;
        gc.tau_s = d / gc.ls;
        const double xi = kGauss[q];
        gc.Na = 0.5 * (1.0 - xi);
        gc.Nb = 0.5 * (1.0 + xi);
        gc.x = gc.Na * xa + gc.Nb * xb;
        gc.weight_len = 0.5 * gc.ls;
        gc.slave = s;
        gc.q = q;
        return true;
    };

    for (const auto& [s, bodies] : self_candidates) {
        for (int q = 0; q < 2; ++q) {
            GaussContact base;
            if (!slave_geometry(s, q, base)) continue;
            for (const auto& [body, masters] : bodies) {
                GaussContact gc = base;
                gc.body = body;
                gc.eps = params_.eps_self;
                // Nearest facet violated by an interior projection wins; when
                // nothing penetrates face-on, the closest facet overall. A
                // purely distance-based pick can hide a penetrated facet
                // behind a tangentially nearer open-gap corner, while clamped
                // projections carry no reliable gap sign (the point merely
                // lies beside the facet's end). Ties go to the lower id.
                bool first = true;
                bool best_pen = false;
                double best_dist = 0.0;
                for (int mseg : masters) {
                    const Segment& m = segs_[static_cast<std::size_t>(mseg)];
                    Projection pr = project_point_segment(
                        gc.x, x[static_cast<std::size_t>(m.n0)], x[static_cast<std::size_t>(m.n1)]);
                    const double dist = (gc.x - pr.point).norm();
                    const bool pen = !pr.clamped && pr.gap < 0.0 && -pr.gap <= pen_cap;
                    const bool better =
                        first || (pen && !best_pen) || (pen == best_pen && dist < best_dist);
                    if (better) {
                        first = false;
                        best_pen = pen;
                        best_dist = dist;
                        gc.proj = pr;
                        gc.master_global = mseg;
                    }
                }
                if (first || !admissible(gc)) continue;
                auto it = lambda_.find(multiplier_key(s, q, body));
                gc.lambda = (it != lambda_.end()) ? it->second : 0.0;
                gc.pressure = std::max(0.0, gc.lambda - gc.eps * gc.proj.gap);
                out.push_back(gc);
            }
        }
    }
    for (const auto& [s, circles] : rigid_candidates) {
        for (int q = 0; q < 2; ++q) {
            GaussContact base;
            if (!slave_geometry(s, q, base)) continue;
            for (int k : circles) {
                GaussContact gc = base;
                gc.body = static_cast<int>(loops_.size()) + k;
                gc.eps = params_.eps_mutual;
                gc.proj = project_point_circle(gc.x, circles_[static_cast<std::size_t>(k)]);
                gc.master_global = -1;
                if (!admissible(gc)) continue;
                auto it = lambda_.find(multiplier_key(s, q, gc.body));
                gc.lambda = (it != lambda_.end()) ? it->second : 0.0;
                gc.pressure = std::max(0.0, gc.lambda - gc.eps * gc.proj.gap);
                out.push_back(gc);
            }
        }
    }
    return out;
}

void ContactWorld::add_force(const std::vector<Vec2>& x, Eigen::VectorXd& f) const {
    for (const GaussContact& gc : evaluate_points(x)) {
        if (gc.pressure <= 0.0) continue;
        const double area = params_.thickness * gc.weight_len;
        const Vec2 t = gc.pressure * gc.proj.normal;
        const Segment& s = segs_[static_cast<std::size_t>(gc.slave)];
        f.segment<2>(2 * s.n0) -= gc.Na * area * t;
        f.segment<2>(2 * s.n1) -= gc.Nb * area * t;
        if (gc.master_global >= 0) {
            const Segment& m = segs_[static_cast<std::size_t>(gc.master_global)];
            const double M1 = 0.5 * (1.0 - gc.proj.xi);
            const double M2 = 0.5 * (1.0 + gc.proj.xi);
            f.segment<2>(2 * m.n0) += M1 * area * t;
            f.segment<2>(2 * m.n1) += M2 * area * t;
        }
    }
}

void ContactWorld::add_stiffness(const std::vector<Vec2>& x,
                                 std::vector<Eigen::Triplet<double>>& triplets) const {
    using Mat2 = Eigen::Matrix2d;
    const Mat2 I2 = Mat2::Identity();

    for (const GaussContact& gc : evaluate_points(x)) {
        if (gc.pressure <= 0.0) continue;
        const Segment& s = segs_[static_cast<std::size_t>(gc.slave)];
        const bool rigid = (gc.master_global < 0);

        int nodes[4] = {s.n0, s.n1, -1, -1};
        int ncount = 2;
        double lm = 0.0;
        Vec2 tau_m = Vec2::Zero();
        double M1 = 0.0, M2 = 0.0;
        if (!rigid) {
            const Segment& m = segs_[static_cast<std::size_t>(gc.master_global)];
            nodes[2] = m.n0;
            nodes[3] = m.n1;
            ncount = 4;
            const Vec2 d = x[static_cast<std::size_t>(m.n1)] - x[static_cast<std::size_t>(m.n0)];
            lm = d.norm();
            tau_m = d / lm;
            M1 = 0.5 * (1.0 - gc.proj.xi);
            M2 = 0.5 * (1.0 + gc.proj.xi);
        }

        const Vec2 n = gc.proj.normal;
        const double g = gc.proj.gap;
        const double P = gc.pressure;
        const double A = params_.thickness * gc.weight_len;

        Vec2 Dg[4] = {Vec2::Zero(), Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
        Vec2 DA[4] = {Vec2::Zero(), Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
        Vec2 Dxi[4] = {Vec2::Zero(), Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
        Mat2 Dn[4] = {Mat2::Zero(), Mat2::Zero(), Mat2::Zero(), Mat2::Zero()};

        Dg[0] = gc.Na * n;
        Dg[1] = gc.Nb * n;
        DA[0] = -(A / gc.ls) * gc.tau_s;
        DA[1] = (A / gc.ls) * gc.tau_s;

        if (rigid) {
            const RigidCircle& c = circles_[static_cast<std::size_t>(gc.body - static_cast<int>(loops_.size()))];
            const double rr = (gc.x - c.center).norm();
            const Mat2 proj_op = (I2 - n * n.transpose()) / rr;
            Dn[0] = gc.Na * proj_op;
            Dn[1] = gc.Nb * proj_op;
        } else {
            const Mat2 tn = tau_m * n.transpose() / lm;
            Dn[2] = tn;
            Dn[3] = -tn;
            if (!gc.proj.clamped) {
                Dg[2] = -M1 * n;
                Dg[3] = -M2 * n;
                Dxi[0] = (2.0 / lm) * gc.Na * tau_m;
                Dxi[1] = (2.0 / lm) * gc.Nb * tau_m;
                Dxi[2] = (2.0 / lm) * (-M1 * tau_m - (g / lm) * n);
                Dxi[3] = (2.0 / lm) * (-M2 * tau_m + (g / lm) * n);
            } else {
                const double beta = (gc.x - gc.proj.point).dot(tau_m);
                const bool at_first = gc.proj.xi < 0.0;
                Dg[2] = ((at_first ? -1.0 : 0.0) + beta / lm) * n;
                Dg[3] = ((at_first ? 0.0 : -1.0) - beta / lm) * n;
            }
        }

        auto scatter = [&](int row_node, const Mat2& block, int col_node) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const double v = block(a, b);
                    if (v != 0.0) {
                        triplets.emplace_back(2 * row_node + a, 2 * col_node + b, v);
                    }
                }
            }
        };

        const double Ns[2] = {gc.Na, gc.Nb};
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < ncount; ++k) {
                // dF_i = -N_i (A n dP + P n dA + P A dn), dP = -eps dg
                Mat2 block = -Ns[i] * (A * n * (-gc.eps * Dg[k]).transpose() +
                                       P * n * DA[k].transpose() + P * A * Dn[k]);
                scatter(nodes[i], block, nodes[k]);
            }
        }
        if (!rigid) {
            const double Ms[2] = {M1, M2};
            const double dM_sign[2] = {-0.5, 0.5};
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < ncount; ++k) {
                    Mat2 block = P * A * n * (dM_sign[j] * Dxi[k]).transpose() +
                                 Ms[j] * (A * n * (-gc.eps * Dg[k]).transpose() +
                                          P * n * DA[k].transpose() + P * A * Dn[k]);
                    scatter(nodes[2 + j], block, nodes[k]);
                }
            }
        }
    }
}

double ContactWorld::max_penetration(const std::vector<Vec2>& x) const {
    double pen = 0.0;
    for (const GaussContact& gc : evaluate_points(x)) {
        pen = std::max(pen, -gc.proj.gap);
    }
    return pen;
}

void ContactWorld::update_multipliers(const std::vector<Vec2>& x) {
    std::unordered_map<std::int64_t, double> updated;
    for (const GaussContact& gc : evaluate_points(x)) {
        const double lam = std::max(0.0, gc.lambda - gc.eps * gc.proj.gap);
        if (lam > 0.0) {
            updated[multiplier_key(gc.slave, gc.q, gc.body)] = lam;
        }
    }
    lambda_ = std::move(updated);
}

int ContactWorld::active_pair_count(const std::vector<Vec2>& x) const {
    std::set<std::pair<int, int>> active;
    for (const GaussContact& gc : evaluate_points(x)) {
        if (gc.pressure > 0.0) {
            active.emplace(gc.slave, gc.master_global >= 0 ? gc.master_global : -1 - gc.body);
        }
    }
    return static_cast<int>(active.size());
}

std::vector<ContactWorld::ActiveContact> ContactWorld::report(const std::vector<Vec2>& x) const {
    std::vector<ActiveContact> out;
    for (const GaussContact& gc : evaluate_points(x)) {
        if (gc.pressure <= 0.0) continue;
        ActiveContact a;
        a.slave_segment = gc.slave;
        a.master_segment = gc.master_global;
        a.rigid = gc.master_global >= 0 ? -1 : gc.body - static_cast<int>(loops_.size());
        a.gap = gc.proj.gap;
        a.traction = gc.pressure;
        a.location = gc.x;
        out.push_back(a);
    }
    return out;
}

}  // namespace mtop
