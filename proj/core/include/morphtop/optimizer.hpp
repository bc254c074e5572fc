#pragma once

/**
 * @file optimizer.hpp
 * @brief Zero-order stochastic hill climber over the mask design vector.
 *
 * Every variable mutates independently with probability pr: continuous
 * variables move by a uniform random fraction of the maximum mutation step
 * and clamp to their bounds, the contact switch re-draws from a fair coin,
 * and the surface fraction moves on the unit range. A candidate replaces the
 * incumbent only when its objective strictly improves, so the incumbent
 * objective is non-increasing by construction. Runs are bit-reproducible for
 * a fixed seed: a single random stream is consumed in a fixed order and
 * evaluations draw nothing from it.
 */

#include "morphtop/design.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace mtop {

/// Deterministic uniform stream; hand-rolled double conversion so histories
/// do not depend on the standard library's distribution implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool coin() { return uniform() < 0.5; }

private:
    std::mt19937_64 engine_;
};

struct MutationBounds {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
    double r_lo = 0.0, r_hi = 0.0;
    double force_lo = 0.0, force_hi = 0.0;
    double fraction_lo = 0.01, fraction_hi = 0.99;
};

struct OptimizerConfig {
    double pr = 0.08;           // per-variable mutation probability
    double step = 0.0;          // max mutation step m, mm (0: derive from domain)
    double step_unit = 0.10;    // max step for the unit-range fraction variable
    int max_iters = 5000;
    double delta_f = 0.01;      // stall tolerance
    int stall_window = 10;      // consecutive low-improvement iterations
    std::uint64_t seed = 0;
    double penalty = 1e6;       // infeasible / failed-solve objective
    double lambda_v = 20.0;     // volume penalization weight
    double volume_target = 0.30;
};

struct EvalDiagnostics {
    double raw_objective = 0.0;  // unpenalized FSD objective
    int newton_iterations = 0;
    int contact_pairs = 0;
    double max_penetration = 0.0;
    std::string note;  // why the candidate was penalized, if it was
};

struct Candidate {
    DesignVector design;  // post-protection design actually analyzed
    double objective = 0.0;
    bool feasible = false;
    bool solver_converged = false;
    double volume = 0.0;
    EvalDiagnostics diag;
};

DesignVector mutate(const DesignVector& design, const OptimizerConfig& cfg,
                    const MutationBounds& bounds, RandomStream& rng);

struct IterationRecord {
    int iter = 0;
    double f_incumbent = 0.0;
    double f_candidate = 0.0;
    bool accepted = false;
    double volume = 0.0;
    int newton_iterations = 0;
    int contact_pairs = 0;
};

struct RunResult {
    Candidate best;
    std::vector<IterationRecord> history;
    bool stalled = false;
    int iterations = 0;
};

using EvaluateFn = std::function<Candidate(const DesignVector&)>;
using IterationCallback = std::function<void(const IterationRecord&, const Candidate& incumbent)>;

RunResult run_hill_climber(const DesignVector& initial, const EvaluateFn& evaluate,
                           const OptimizerConfig& cfg, const MutationBounds& bounds,
                           const IterationCallback& on_iteration = nullptr);

/// Uniform mask grid initial layout: r = r_max/2, s = 0, f = 0.5.
DesignVector initial_design(int masks_x, int masks_y, const MutationBounds& bounds,
                            double domain_w, double domain_h, double initial_force);

}  // namespace mtop
