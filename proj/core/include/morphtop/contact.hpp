#pragma once

/**
 * @file contact.hpp
 * @brief Frictionless, adhesionless self and mutual contact.
 *
 * Segment-to-segment scheme with two-node linear contact segments: every
 * boundary segment carries two Gauss points which are projected onto
 * candidate master surfaces (other boundary segments for self contact,
 * analytic rigid circles for mutual contact). The inner loop applies the
 * classical penalty traction; an outer Uzawa loop augments it with a
 * nonnegative normal multiplier per Gauss point and master body until the
 * maximum penetration falls below the gap tolerance.
 *
 * Sign conventions: gap g = (x - x_p) . n_p with n_p the outward master
 * normal, so g < 0 means penetration. The augmented pressure is
 * p = max(0, lambda - eps * g) and multipliers update as
 * lambda <- max(0, lambda - eps * g), which grows by eps * |g| per outer
 * iteration under fixed penetration and clamps to zero on open gaps.
 */

#include "morphtop/geom.hpp"

#include <Eigen/Sparse>

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace mtop {

struct RigidCircle {
    Vec2 center = Vec2::Zero();
    double radius = 0.0;
};

struct ContactParams {
    double eps_mutual = 0.0;   // N/mm^3, rigid-surface (mutual) pairs
    double eps_self = 0.0;     // N/mm^3, self pairs
    double search_radius = 0.0;  // mm
    double gap_tol = 0.0;        // mm, Uzawa termination on max penetration
    double thickness = 1.0;      // mm
    int max_uzawa = 10;
    // Deeper apparent penetrations are geometric artifacts (a point behind a
    // surface separated from it by solid material) and are ignored. 0 = sr/2,
    // below the through-member distance of the honeycomb lattice (>= ~1.2a
    // even after smoothing) yet wide enough that a whole load increment of
    // approach still registers as contact. Near-field artifacts inside the
    // same boundary neighborhood are removed topologically by the
    // self-exclusion window instead.
    double penetration_cap = 0.0;

    double effective_cap() const {
        return penetration_cap > 0.0 ? penetration_cap : 0.5 * search_radius;
    }
};

struct Projection {
    Vec2 point = Vec2::Zero();   // closest point x_p on the target
    Vec2 normal = Vec2::Zero();  // outward unit normal at x_p
    double gap = 0.0;            // (x - x_p) . normal, negative = penetration
    double xi = 0.0;             // segment coordinate in [-1,1] (0 for circles)
    int segment = -1;            // polyline segment index (-1 for circles)
    bool clamped = false;        // clamped to a segment endpoint
};

/// Closest point on segment [y1,y2]; `outward` orients the reported normal.
Projection project_point_segment(const Vec2& x, const Vec2& y1, const Vec2& y2);

/// Closest point over all polyline segments, ties broken to the lower
/// segment index. The polyline is traversed with the solid on its left
/// (CCW loop), so the outward normal points right of each segment.
Projection project_point_polyline(const Vec2& x, const std::vector<Vec2>& points, bool closed);

/// x_p = c + R (x - c)/|x - c|. Throws std::domain_error when x == c.
Projection project_point_circle(const Vec2& x, const RigidCircle& circle);

/// Augmented penalty traction on the slave: p = max(0, lambda - eps*gap),
/// t = p * normal. With lambda = 0 this is the classical penalty law.
Vec2 contact_traction(double gap, const Vec2& normal, double eps, double lambda);

struct ContactPair {
    int slave_segment = -1;   // global boundary segment index
    int master_segment = -1;  // global boundary segment index; -1 for rigid
    int rigid = -1;           // rigid circle index; -1 for self pairs

    bool mutual() const { return rigid >= 0; }
};

class ContactWorld {
public:
    /// `loops` lists closed boundary node chains (CCW around the solid),
    /// indices into the position vectors passed to the evaluation calls.
    ContactWorld(std::vector<std::vector<int>> loops, std::vector<RigidCircle> circles,
                 ContactParams params);

    int segment_count() const { return static_cast<int>(segs_.size()); }
    const ContactParams& params() const { return params_; }

    /// Broad phase: spatial hash over inflated segment boxes. Narrow phase:
    /// minimal distance <= search_radius; self pairs exclude neighbors within
    /// 6 segments along the same loop (the span of a honeycomb notch); the
    /// lower segment id is slave.
    std::vector<ContactPair> detect_pairs(const std::vector<Vec2>& x) const;

    void add_force(const std::vector<Vec2>& x, Eigen::VectorXd& f) const;
    void add_stiffness(const std::vector<Vec2>& x,
                       std::vector<Eigen::Triplet<double>>& triplets) const;

    double max_penetration(const std::vector<Vec2>& x) const;
    void update_multipliers(const std::vector<Vec2>& x);
    void reset_multipliers() { lambda_.clear(); }

    /// Multiplier snapshot/restore, used to roll back failed load steps.
    const std::unordered_map<std::int64_t, double>& multipliers() const { return lambda_; }
    void set_multipliers(std::unordered_map<std::int64_t, double> m) { lambda_ = std::move(m); }

    int active_pair_count(const std::vector<Vec2>& x) const;

    struct ActiveContact {
        int slave_segment = -1;
        int master_segment = -1;
        int rigid = -1;
        double gap = 0.0;
        double traction = 0.0;  // |t_c|, N/mm^2
        Vec2 location = Vec2::Zero();
    };
    std::vector<ActiveContact> report(const std::vector<Vec2>& x) const;

private:
    struct Segment {
        int loop = -1;
        int index = -1;  // position along the loop
        int n0 = -1;
        int n1 = -1;
    };

    struct GaussContact {
        int slave = -1;
        int q = 0;
        double Na = 0.0, Nb = 0.0;
        Vec2 x = Vec2::Zero();
        double weight_len = 0.0;  // l_s / 2
        double ls = 0.0;
        Vec2 tau_s = Vec2::Zero();
        int body = -1;  // loop id, or loop_count + circle id
        Projection proj;
        double eps = 0.0;
        double lambda = 0.0;
        double pressure = 0.0;       // max(0, lambda - eps * gap)
        int master_global = -1;      // global segment id for self pairs
    };

    std::vector<GaussContact> evaluate_points(const std::vector<Vec2>& x) const;
    std::int64_t multiplier_key(int slave, int q, int body) const;

    std::vector<std::vector<int>> loops_;
    std::vector<RigidCircle> circles_;
    ContactParams params_;
    std::vector<Segment> segs_;
    std::unordered_map<std::int64_t, double> lambda_;
};

}  // namespace mtop
