#include "morphtop/pipeline.hpp"

#include "morphtop/io.hpp"
#include "morphtop/smoothing.hpp"
#include "morphtop/svg.hpp"
#include "morphtop/version.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <queue>
#include <set>
#include <sstream>

namespace mtop {

namespace {

std::vector<int> resolve_selector(const HexMesh& mesh, const SelectorConfig& sel,
                                  const std::string& what) {
    std::vector<int> out;
    if (sel.node) {
        if (*sel.node < 0 || *sel.node >= static_cast<int>(mesh.nodes().size())) {
            throw ConfigError("'" + what + ".node' is out of range");
        }
        out.push_back(*sel.node);
    } else if (sel.at) {
        int best = -1;
        double best_d = 0.0;
        for (const Node& n : mesh.nodes()) {
            const double d = (n.pos - *sel.at).squaredNorm();
            if (best < 0 || d < best_d) {
                best = n.id;
                best_d = d;
            }
        }
        out.push_back(best);
    } else if (sel.rect) {
        const auto& r = *sel.rect;
        for (const Node& n : mesh.nodes()) {
            if (n.pos.x() >= r[0] - 1e-9 && n.pos.x() <= r[2] + 1e-9 &&
                n.pos.y() >= r[1] - 1e-9 && n.pos.y() <= r[3] + 1e-9) {
                out.push_back(n.id);
            }
        }
        if (out.empty()) throw ConfigError("'" + what + ".rect' selects no nodes");
    }
    return out;
}

std::vector<int> elements_in_rect(const HexMesh& mesh, const std::array<double, 4>& r) {
    std::vector<int> out;
    for (const HexElement& el : mesh.elements()) {
        const Vec2 c = mesh.centroid(el.id);
        if (c.x() >= r[0] && c.x() <= r[2] && c.y() >= r[1] && c.y() <= r[3]) {
            out.push_back(el.id);
        }
    }
    return out;
}

Candidate penalized(const DesignVector& design, double penalty, const std::string& why) {
    Candidate c;
    c.design = design;
    c.objective = penalty;
    c.feasible = false;
    c.solver_converged = false;
    c.diag.note = why;
    return c;
}

}  // namespace

Problem build_problem(const ProblemConfig& cfg) {
    Problem p;
    p.config = cfg;
    p.mesh = HexMesh::generate(cfg.cols, cfg.rows, cfg.edge_length);
    p.material = MaterialParams{cfg.youngs_modulus, cfg.poisson_ratio, cfg.thickness};

    for (const SupportConfig& s : cfg.supports) {
        for (int n : resolve_selector(p.mesh, s.where, "supports")) {
            if (s.fix == "x" || s.fix == "xy") p.supports.push_back({n, 0, 0.0});
            if (s.fix == "y" || s.fix == "xy") p.supports.push_back({n, 1, 0.0});
        }
    }
    for (const LoadConfig& l : cfg.loads) {
        for (int n : resolve_selector(p.mesh, l.where, "loads")) {
            p.load_nodes.push_back(n);
            p.load_directions.push_back(l.direction);
        }
    }

    if (!cfg.smn_nodes.empty()) {
        for (int n : cfg.smn_nodes) {
            if (n < 0 || n >= static_cast<int>(p.mesh.nodes().size())) {
                throw ConfigError("'smn.nodes' contains an out-of-range id");
            }
            p.smn_nodes.push_back(n);
        }
    } else {
        for (const Vec2& pt : cfg.smn_points) {
            SelectorConfig sel;
            sel.at = pt;
            p.smn_nodes.push_back(resolve_selector(p.mesh, sel, "smn").front());
        }
    }
    p.smes = derive_smes(p.mesh, p.smn_nodes);

    // Shape-morphing elements must form one edge-connected member.
    {
        std::set<int> sme_set(p.smes.element_ids.begin(), p.smes.element_ids.end());
        std::set<int> seen;
        std::queue<int> q;
        q.push(p.smes.element_ids.front());
        seen.insert(p.smes.element_ids.front());
        while (!q.empty()) {
            const int e = q.front();
            q.pop();
            for (int nb : p.mesh.neighbors(e)) {
                if (sme_set.count(nb) && !seen.count(nb)) {
                    seen.insert(nb);
                    q.push(nb);
                }
            }
        }
        if (seen.size() != sme_set.size()) {
            throw ConfigError("'smn' selects a member whose elements are not edge-connected");
        }
    }

    for (const RegionConfig& r : cfg.regions) {
        const auto elems = elements_in_rect(p.mesh, r.rect);
        auto& dst = r.solid ? p.forced_solid : p.forced_void;
        dst.insert(dst.end(), elems.begin(), elems.end());
    }
    for (int e : p.forced_void) {
        for (int sme : p.smes.element_ids) {
            if (e == sme) throw ConfigError("'regions': a void region overlaps the SMN member");
        }
    }

    const std::string target_path =
        cfg.base_dir.empty() ? cfg.target_curve
                             : (std::filesystem::path(cfg.base_dir) / cfg.target_curve).string();
    CurvePolyline target;
    target.points = read_curve_file(target_path);
    if (target.points.size() < 3) {
        throw ConfigError("'target_curve' must contain at least 3 points");
    }
    p.target_curve = target;
    const ClosedCurve closed = close_curve(target);
    if (!closed.ok) {
        throw ConfigError("'target_curve' cannot be closed: " + closed.error);
    }
    p.target_fsd = compute_fsd(closed.curve, cfg.fsd_coefficients);
    p.weights = ObjectiveWeights{cfg.weight_a, cfg.weight_b, cfg.weight_length, cfg.weight_theta};

    const double a = cfg.edge_length;
    const double L2 = p.mesh.height();
    p.contact.eps_mutual = cfg.eps_n > 0.0 ? cfg.eps_n : 60.0 * cfg.youngs_modulus / L2;
    p.contact.eps_self = cfg.eps_s > 0.0 ? cfg.eps_s : 5.0 * cfg.youngs_modulus / L2;
    p.contact.search_radius = cfg.search_radius > 0.0 ? cfg.search_radius : 2.0 * a;
    p.contact.gap_tol = cfg.gap_tol_factor * a;
    p.contact.thickness = cfg.thickness;
    p.contact.max_uzawa = cfg.max_uzawa;
    p.contact.penetration_cap = cfg.penetration_cap;

    p.newton.load_steps = cfg.load_steps;
    p.newton.min_step = cfg.min_step;
    p.newton.tol_rel = cfg.tol_rel;
    p.newton.tol_abs = cfg.tol_abs;
    p.newton.max_iterations = cfg.max_newton;

    p.optimizer.pr = cfg.pr;
    p.optimizer.step = cfg.mutation_scale * std::max(p.mesh.width(), p.mesh.height());
    p.optimizer.step_unit = cfg.mutation_scale;
    p.optimizer.max_iters = cfg.max_iters;
    p.optimizer.delta_f = cfg.delta_f;
    p.optimizer.stall_window = cfg.stall_window;
    p.optimizer.seed = cfg.seed;
    p.optimizer.lambda_v = cfg.lambda_v;
    p.optimizer.volume_target = cfg.volume_fraction;

    p.bounds.x_lo = -cfg.r_max;
    p.bounds.x_hi = p.mesh.width() + cfg.r_max;
    p.bounds.y_lo = -cfg.r_max;
    p.bounds.y_hi = p.mesh.height() + cfg.r_max;
    p.bounds.r_lo = cfg.r_min;
    p.bounds.r_hi = cfg.r_max;
    p.bounds.force_lo = cfg.force_lo;
    p.bounds.force_hi = cfg.force_hi;
    return p;
}

DesignVector make_initial_design(const Problem& p) {
    if (!p.config.initial_design.empty()) {
        const std::string path =
            p.config.base_dir.empty()
                ? p.config.initial_design
                : (std::filesystem::path(p.config.base_dir) / p.config.initial_design).string();
        return read_design_file(path);
    }
    return initial_design(p.config.masks_x, p.config.masks_y, p.bounds, p.mesh.width(),
                          p.mesh.height(), p.config.initial_force);
}

Evaluation evaluate_design(const Problem& p, const DesignVector& design, bool keep_artifacts) {
    Evaluation ev;
    const double penalty = p.optimizer.penalty;

    // Mask protection keeps the shape-morphing member solid; the analyzed
    // design carries the shifted masks.
    const ProtectOutcome prot = protect_smes(design.masks, p.smes, p.mesh, p.bounds.r_lo);
    DesignVector analyzed = design;
    analyzed.masks = prot.masks;

    // Step-1 removal plus forced regions.
    MaterialField mat = assign_material_states(p.mesh, analyzed.masks);
    for (int e : p.forced_void) mat.rho[static_cast<std::size_t>(e)] = 0;
    for (int e : p.forced_solid) mat.rho[static_cast<std::size_t>(e)] = 1;
    for (int e : p.smes.element_ids) mat.rho[static_cast<std::size_t>(e)] = 1;

    std::vector<Vec2> ref(p.mesh.nodes().size());
    for (const Node& n : p.mesh.nodes()) ref[static_cast<std::size_t>(n.id)] = n.pos;

    // First smoothing pass set (boundary resolution after step-1 removal).
    {
        const auto edges1 = boundary_edges(p.mesh, mat);
        const SmoothedBoundary s1 = smooth(ref, edges1, p.config.beta);
        if (s1.non_manifold) {
            ev.candidate = penalized(analyzed, penalty, "non-manifold boundary after step 1");
            return ev;
        }
    }

    // Step-2 removal: hexagons restored to their regular shape first.
    std::vector<int> keep = p.smes.element_ids;
    keep.insert(keep.end(), p.forced_solid.begin(), p.forced_solid.end());
    mat = second_step_removal(mat, analyzed.masks, p.mesh, keep);
    for (int e : p.forced_void) mat.rho[static_cast<std::size_t>(e)] = 0;

    // Feasibility: load/support/SME elements solid and connected.
    std::vector<int> ports = p.smes.element_ids;
    auto port_for_node = [&](int node) {
        for (int e : p.mesh.node_elements(node)) {
            if (mat.solid(e)) return e;
        }
        return -1;
    };
    std::vector<int> bc_nodes = p.load_nodes;
    for (const DirichletBC& bc : p.supports) bc_nodes.push_back(bc.node);
    for (int n : bc_nodes) {
        const int e = port_for_node(n);
        if (e < 0) {
            ev.candidate = penalized(analyzed, penalty, "boundary-condition node lost its material");
            return ev;
        }
        ports.push_back(e);
    }
    if (!check_feasibility(mat, p.mesh, ports)) {
        ev.candidate = penalized(analyzed, penalty, "ports are disconnected");
        return ev;
    }

    // Final smoothing on the regular-shape field.
    const auto edges = boundary_edges(p.mesh, mat);
    const SmoothedBoundary sb = smooth(ref, edges, p.config.beta);
    if (sb.non_manifold) {
        ev.candidate = penalized(analyzed, penalty, "non-manifold boundary after step 2");
        return ev;
    }
    const std::vector<Vec2> pos = apply_smoothing(ref, sb);

    // Solid submesh with compact node numbering.
    std::vector<int> compact(p.mesh.nodes().size(), -1);
    std::vector<int> active;
    for (const HexElement& el : p.mesh.elements()) {
        if (!mat.solid(el.id)) continue;
        for (int n : el.nodes) {
            if (compact[static_cast<std::size_t>(n)] < 0) {
                compact[static_cast<std::size_t>(n)] = static_cast<int>(active.size());
                active.push_back(n);
            }
        }
    }

    FemModel model;
    model.material = p.material;
    model.X.reserve(active.size());
    for (int n : active) model.X.push_back(pos[static_cast<std::size_t>(n)]);
    try {
        for (const HexElement& el : p.mesh.elements()) {
            if (!mat.solid(el.id)) continue;
            std::vector<int> ids;
            std::vector<Vec2> corners;
            for (int n : el.nodes) {
                ids.push_back(compact[static_cast<std::size_t>(n)]);
                corners.push_back(pos[static_cast<std::size_t>(n)]);
            }
            model.elements.emplace_back(std::move(ids), std::move(corners));
        }
    } catch (const std::exception& e) {
        ev.candidate = penalized(analyzed, penalty, std::string("degenerate element: ") + e.what());
        return ev;
    }
    model.f_ext = Eigen::VectorXd::Zero(model.dof_count());
    for (const DirichletBC& bc : p.supports) {
        model.dirichlet.push_back({compact[static_cast<std::size_t>(bc.node)], bc.comp, 0.0});
    }
    for (std::size_t i = 0; i < p.load_nodes.size(); ++i) {
        const int n = compact[static_cast<std::size_t>(p.load_nodes[static_cast<std::size_t>(i)])];
        model.f_ext.segment<2>(2 * n) += analyzed.force * p.load_directions[i];
    }

    // Contact world: smoothed boundary loops plus rigid mask circles.
    std::vector<std::vector<int>> loops_mesh = chain_boundary_loops(edges);
    std::vector<std::vector<int>> loops;
    loops.reserve(loops_mesh.size());
    for (const auto& loop : loops_mesh) {
        std::vector<int> l;
        l.reserve(loop.size());
        for (int n : loop) l.push_back(compact[static_cast<std::size_t>(n)]);
        loops.push_back(std::move(l));
    }
    const std::vector<RigidSurface> surfaces =
        generate_rigid_surfaces(analyzed.masks, p.config.circle_segments);
    std::vector<RigidCircle> circles;
    circles.reserve(surfaces.size());
    for (const RigidSurface& s : surfaces) circles.push_back({s.center, s.radius});
    ContactWorld contact(loops, circles, p.contact);

    NewtonConfig newton_cfg = p.newton;
    newton_cfg.record_steps = keep_artifacts;
    const SolverState st = newton_solve(model, &contact, newton_cfg);
    if (!st.converged) {
        ev.candidate = penalized(analyzed, penalty, "solver failed: " + st.stats.failure);
        ev.candidate.diag.newton_iterations = st.stats.newton_iterations;
        return ev;
    }

    // Deformed shape-morphing polyline and its descriptor.
    CurvePolyline actual;
    for (int n : p.smn_nodes) {
        const int cn = compact[static_cast<std::size_t>(n)];
        actual.points.push_back(pos[static_cast<std::size_t>(n)] +
                                Vec2(st.u[2 * cn], st.u[2 * cn + 1]));
    }
    const ClosedCurve closed = close_curve(actual);
    if (!closed.ok) {
        ev.candidate = penalized(analyzed, penalty, "actual curve closure failed: " + closed.error);
        return ev;
    }
    const FourierDescriptor actual_fsd = compute_fsd(closed.curve, p.config.fsd_coefficients);
    const FsdErrors errors = fsd_errors(p.target_fsd, actual_fsd);
    const double f0 = fsd_objective(errors, p.weights);

    const double volume = volume_fraction(mat, p.mesh);
    const double over = volume - p.optimizer.volume_target;
    const double f = f0 + (over > 0.0 ? p.optimizer.lambda_v * over : 0.0);

    Candidate c;
    c.design = analyzed;
    c.objective = f;
    c.feasible = true;
    c.solver_converged = true;
    c.volume = volume;
    c.diag.raw_objective = f0;
    c.diag.newton_iterations = st.stats.newton_iterations;
    c.diag.contact_pairs = st.stats.active_pairs;
    c.diag.max_penetration = st.stats.max_penetration;
    ev.candidate = c;

    if (keep_artifacts) {
        auto art = std::make_shared<EvalArtifacts>();
        art->material = mat;
        art->smoothed_positions = pos;
        art->loops = std::move(loops_mesh);
        art->rigid_surfaces = surfaces;
        art->active_nodes = active;
        art->u = st.u;
        art->solved = true;
        art->actual_curve = actual;
        art->errors = errors;
        art->zetas = shape_invariants(p.target_fsd, actual_fsd, p.config.zeta_per_mode);
        art->compliance = end_compliance(model.f_ext, st.u);
        std::vector<Vec2> x(model.X.size());
        for (std::size_t i = 0; i < model.X.size(); ++i) {
            x[i] = model.X[i] + Vec2(st.u[2 * static_cast<int>(i)], st.u[2 * static_cast<int>(i) + 1]);
        }
        art->contacts = contact.report(x);
        art->solve_stats = st.stats;
        art->steps = st.steps;
        ev.artifacts = std::move(art);
    }
    if (prot.any_clamped) {
        ev.candidate.diag.note += "protection clamped a pathological mask radius; ";
    }
    return ev;
}

std::string render_frame(const Problem& p, const EvalArtifacts& art) {
    SvgWriter svg;
    const auto& pos = art.smoothed_positions;

    auto element_polygon = [&](int e, bool deformed) {
        std::vector<Vec2> poly;
        for (int n : p.mesh.elements()[static_cast<std::size_t>(e)].nodes) {
            Vec2 q = pos[static_cast<std::size_t>(n)];
            if (deformed && art.solved) {
                // Active nodes carry displacements; void-only nodes never draw.
                for (std::size_t i = 0; i < art.active_nodes.size(); ++i) {
                    if (art.active_nodes[i] == n) {
                        q += Vec2(art.u[2 * static_cast<int>(i)], art.u[2 * static_cast<int>(i) + 1]);
                        break;
                    }
                }
            }
            poly.push_back(q);
        }
        return poly;
    };

    // Mirror helper for symmetric-half problems.
    std::vector<std::vector<Vec2>> mirrored;
    auto mirror = [&](const std::vector<Vec2>& poly) {
        if (!p.config.symmetry) return;
        std::vector<Vec2> m = poly;
        for (Vec2& q : m) {
            if (p.config.symmetry->axis == "vertical") {
                q.x() = 2.0 * p.config.symmetry->position - q.x();
            } else {
                q.y() = 2.0 * p.config.symmetry->position - q.y();
            }
        }
        std::reverse(m.begin(), m.end());
        mirrored.push_back(std::move(m));
    };

    for (const HexElement& el : p.mesh.elements()) {
        if (!art.material.solid(el.id)) continue;
        const auto ref_poly = element_polygon(el.id, false);
        svg.polygon(ref_poly, "#d9d9d9", "#999999", 0.02, 1.0);
        mirror(ref_poly);
    }
    for (const auto& poly : mirrored) svg.polygon(poly, "#ececec", "#bbbbbb", 0.02, 1.0);
    mirrored.clear();

    if (art.solved) {
        for (const HexElement& el : p.mesh.elements()) {
            if (!art.material.solid(el.id)) continue;
            const auto poly = element_polygon(el.id, true);
            svg.polygon(poly, "#4d88ff", "#1a53cc", 0.02, 0.55);
            mirror(poly);
        }
        for (const auto& poly : mirrored) svg.polygon(poly, "#9dbcff", "#5580dd", 0.02, 0.4);
        mirrored.clear();
    }

    for (const RigidSurface& s : art.rigid_surfaces) {
        svg.circle(s.center, s.radius, "#333333", "#000000");
    }
    if (p.target_curve.points.size() >= 2) {
        svg.polyline(p.target_curve.points, "#000000", 0.08, true);
    }
    if (art.actual_curve.points.size() >= 2) {
        svg.polyline(art.actual_curve.points, "#00a000", 0.08, false);
    }
    for (const auto& c : art.contacts) {
        svg.marker(c.location, 0.4 * p.mesh.edge_length(), "#d00000");
    }
    return svg.finish(p.mesh.edge_length());
}

namespace {

void export_artifacts(const Problem& problem, const Evaluation& ev, const std::string& dir) {
    namespace fs = std::filesystem;
    const Candidate& c = ev.candidate;
    atomic_write_file((fs::path(dir) / "design_best.txt").string(), format_design(c.design));
    atomic_write_file((fs::path(dir) / "curve_desired.txt").string(),
                      format_curve(problem.target_curve.points));
    if (ev.artifacts) {
        const EvalArtifacts& art = *ev.artifacts;
        atomic_write_file((fs::path(dir) / "material_field.txt").string(),
                          format_material_field(art.material));
        atomic_write_file((fs::path(dir) / "curve_actual.txt").string(),
                          format_curve(art.actual_curve.points));
        std::ostringstream rep;
        rep << "objective " << c.objective << "\n";
        rep << "raw_objective " << c.diag.raw_objective << "\n";
        rep << "volume_fraction " << c.volume << "\n";
        rep << "a_err " << art.errors.a_err << "\n";
        rep << "b_err " << art.errors.b_err << "\n";
        rep << "length_err " << art.errors.length_err << "\n";
        rep << "theta_err " << art.errors.theta_err << "\n";
        if (art.zetas.valid) {
            rep << "zeta_s_percent " << 100.0 * art.zetas.zeta_shape << "\n";
            rep << "zeta_l_percent " << 100.0 * art.zetas.zeta_length << "\n";
        } else {
            rep << "zeta_s_percent undefined (reference invariant vanishes)\n";
            rep << "zeta_l_percent undefined (reference invariant vanishes)\n";
        }
        rep << "end_compliance " << art.compliance << "\n";
        rep << "newton_iterations " << art.solve_stats.newton_iterations << "\n";
        rep << "active_contact_pairs " << art.solve_stats.active_pairs << "\n";
        rep << "max_penetration " << art.solve_stats.max_penetration << "\n";
        atomic_write_file((fs::path(dir) / "report.txt").string(), rep.str());

        std::ostringstream con;
        con << "# slave_segment master_segment rigid gap traction x y\n";
        for (const auto& a : art.contacts) {
            con << a.slave_segment << ' ' << a.master_segment << ' ' << a.rigid << ' ' << a.gap
                << ' ' << a.traction << ' ' << a.location.x() << ' ' << a.location.y() << '\n';
        }
        atomic_write_file((fs::path(dir) / "contact_report.txt").string(), con.str());
        atomic_write_file((fs::path(dir) / "frame_final.svg").string(),
                          render_frame(problem, art));

        // Per-load-step nodal positions (animation export): node id, x, y.
        if (!art.steps.empty()) {
            fs::create_directories(fs::path(dir) / "steps");
            for (std::size_t s = 0; s < art.steps.size(); ++s) {
                std::ostringstream os;
                os << "# load_factor " << art.steps[s].load_factor << "\n";
                for (std::size_t i = 0; i < art.active_nodes.size(); ++i) {
                    const int n = art.active_nodes[i];
                    const Vec2 q = art.smoothed_positions[static_cast<std::size_t>(n)] +
                                   Vec2(art.steps[s].u[2 * static_cast<int>(i)],
                                        art.steps[s].u[2 * static_cast<int>(i) + 1]);
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "%d %.17g %.17g\n", n, q.x(), q.y());
                    os << buf;
                }
                char name[32];
                std::snprintf(name, sizeof name, "step_%03zu.txt", s);
                atomic_write_file((fs::path(dir) / "steps" / name).string(), os.str());
            }
        }
    } else {
        std::ostringstream rep;
        rep << "objective " << c.objective << "\n";
        rep << "penalized " << c.diag.note << "\n";
        atomic_write_file((fs::path(dir) / "report.txt").string(), rep.str());
    }
}

}  // namespace

SynthesisResult run_synthesis(const ProblemConfig& cfg, const std::string& out_dir,
                              int frames_every) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    fs::create_directories(fs::path(out_dir) / "frames");

    const Problem problem = build_problem(cfg);
    atomic_write_file((fs::path(out_dir) / "config.json").string(), serialize_config(cfg));

    std::ostringstream csv;
    csv << csv_header();

    auto evaluate = [&](const DesignVector& d) { return evaluate_design(problem, d).candidate; };

    const DesignVector init = make_initial_design(problem);

    int frame_counter = 0;
    auto on_iteration = [&](const IterationRecord& rec, const Candidate& incumbent) {
        csv << csv_row(rec);
        if (frames_every > 0 && rec.iter % frames_every == 0) {
            const Evaluation ev = evaluate_design(problem, incumbent.design, true);
            if (ev.artifacts) {
                char name[64];
                std::snprintf(name, sizeof name, "frame_%06d.svg", rec.iter);
                atomic_write_file((fs::path(out_dir) / "frames" / name).string(),
                                  render_frame(problem, *ev.artifacts));
                ++frame_counter;
            }
        }
    };

    SynthesisResult result;
    result.out_dir = out_dir;
    result.run = run_hill_climber(init, evaluate, problem.optimizer, problem.bounds, on_iteration);

    atomic_write_file((fs::path(out_dir) / "iterations.csv").string(), csv.str());

    const Evaluation best = evaluate_design(problem, result.run.best.design, true);
    export_artifacts(problem, best, out_dir);

    std::ostringstream meta;
    meta << "version " << kVersion << "\n";
    meta << "seed " << cfg.seed << "\n";
    meta << "iterations " << result.run.iterations << "\n";
    meta << "terminated " << (result.run.stalled ? "stall" : "max_iters") << "\n";
    meta << "frames " << frame_counter << "\n";
    atomic_write_file((fs::path(out_dir) / "run_meta.txt").string(), meta.str());

    result.wrote_artifacts = true;
    return result;
}

Evaluation replay_design(const ProblemConfig& cfg, const DesignVector& design,
                         const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const Problem problem = build_problem(cfg);
    atomic_write_file((fs::path(out_dir) / "config.json").string(), serialize_config(cfg));
    const Evaluation ev = evaluate_design(problem, design, true);
    export_artifacts(problem, ev, out_dir);
    return ev;
}

}  // namespace mtop
