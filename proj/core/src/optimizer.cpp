#include "morphtop/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mtop {

namespace {

double mutate_continuous(double value, double lo, double hi, double step,
                         const OptimizerConfig& cfg, RandomStream& rng) {
    const double chi = rng.uniform();
    if (chi >= cfg.pr) return value;
    const double kappa = rng.uniform();
    const double sign = rng.coin() ? 1.0 : -1.0;
    return std::clamp(value + sign * kappa * step, lo, hi);
}

}  // namespace

DesignVector mutate(const DesignVector& design, const OptimizerConfig& cfg,
                    const MutationBounds& bounds, RandomStream& rng) {
    if (!(cfg.pr > 0.0 && cfg.pr < 1.0)) {
        throw std::invalid_argument("mutate: pr must lie in (0,1)");
    }
    DesignVector out = design;
    for (Mask& m : out.masks) {
        m.x = mutate_continuous(m.x, bounds.x_lo, bounds.x_hi, cfg.step, cfg, rng);
        m.y = mutate_continuous(m.y, bounds.y_lo, bounds.y_hi, cfg.step, cfg, rng);
        m.r = mutate_continuous(m.r, bounds.r_lo, bounds.r_hi, cfg.step, cfg, rng);
        const double chi = rng.uniform();
        if (chi < cfg.pr) {
            const double kappa = rng.uniform();
            m.s = kappa < 0.5 ? 1 : 0;
        }
        m.f = mutate_continuous(m.f, bounds.fraction_lo, bounds.fraction_hi, cfg.step_unit,
                                cfg, rng);
    }
    out.force = mutate_continuous(out.force, bounds.force_lo, bounds.force_hi, cfg.step, cfg, rng);
    return out;
}

RunResult run_hill_climber(const DesignVector& initial, const EvaluateFn& evaluate,
                           const OptimizerConfig& cfg, const MutationBounds& bounds,
                           const IterationCallback& on_iteration) {
    RunResult result;
    RandomStream rng(cfg.seed);

    Candidate incumbent = evaluate(initial);
    int stall = 0;
    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        const DesignVector trial = mutate(incumbent.design, cfg, bounds, rng);
        const Candidate candidate = evaluate(trial);

        const double f_old = incumbent.objective;
        const bool accepted = candidate.objective < incumbent.objective;
        if (accepted) incumbent = candidate;

        IterationRecord rec;
        rec.iter = iter;
        rec.f_incumbent = incumbent.objective;
        rec.f_candidate = candidate.objective;
        rec.accepted = accepted;
        rec.volume = candidate.volume;
        rec.newton_iterations = candidate.diag.newton_iterations;
        rec.contact_pairs = candidate.diag.contact_pairs;
        result.history.push_back(rec);
        if (on_iteration) on_iteration(rec, incumbent);

        result.iterations = iter;
        const double improvement = f_old - incumbent.objective;
        stall = (improvement < cfg.delta_f) ? stall + 1 : 0;
        if (stall >= cfg.stall_window) {
            result.stalled = true;
            break;
        }
    }
    result.best = incumbent;
    return result;
}

DesignVector initial_design(int masks_x, int masks_y, const MutationBounds& bounds,
                            double domain_w, double domain_h, double initial_force) {
    if (masks_x < 1 || masks_y < 1) {
        throw std::invalid_argument("initial_design: mask grid must be >= 1x1");
    }
    DesignVector d;
    d.masks.reserve(static_cast<std::size_t>(masks_x) * masks_y);
    for (int j = 0; j < masks_y; ++j) {
        for (int i = 0; i < masks_x; ++i) {
            Mask m;
            m.x = domain_w * (i + 0.5) / masks_x;
            m.y = domain_h * (j + 0.5) / masks_y;
            m.r = 0.5 * bounds.r_hi;
            m.s = 0;
            m.f = 0.5;
            d.masks.push_back(m);
        }
    }
    d.force = std::clamp(initial_force, bounds.force_lo, bounds.force_hi);
    return d;
}

}  // namespace mtop
