#include "morphtop/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace mtop {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_keys(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) {
            fail("unknown key '" + (path.empty() ? key : path + "." + key) + "'");
        }
    }
}

double get_number(const json& j, const std::string& path, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) fail("'" + path + "." + key + "' must be a number");
    return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& path, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) fail("'" + path + "." + key + "' must be an integer");
    return j.at(key).get<int>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) fail("'" + path + "." + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

Vec2 get_vec2(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail("'" + where + "' must be an array of two numbers");
    }
    return Vec2(j[0].get<double>(), j[1].get<double>());
}

std::array<double, 4> get_rect(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 4) {
        fail("'" + where + "' must be an array of four numbers [x0, y0, x1, y1]");
    }
    std::array<double, 4> r{};
    for (int i = 0; i < 4; ++i) {
        if (!j[i].is_number()) fail("'" + where + "' must contain numbers");
        r[static_cast<std::size_t>(i)] = j[i].get<double>();
    }
    return r;
}

SelectorConfig parse_selector(const json& j, const std::string& where) {
    require_keys(j, where, {"node", "at", "rect", "fix", "direction"});
    SelectorConfig s;
    int given = 0;
    if (j.contains("node")) {
        if (!j.at("node").is_number_integer()) fail("'" + where + ".node' must be an integer");
        s.node = j.at("node").get<int>();
        ++given;
    }
    if (j.contains("at")) {
        s.at = get_vec2(j.at("at"), where + ".at");
        ++given;
    }
    if (j.contains("rect")) {
        s.rect = get_rect(j.at("rect"), where + ".rect");
        ++given;
    }
    if (given != 1) fail("'" + where + "' needs exactly one of 'node', 'at', 'rect'");
    return s;
}

void validate(const ProblemConfig& c) {
    if (c.cols < 1) fail("'domain.cols' must be >= 1");
    if (c.rows < 1) fail("'domain.rows' must be >= 1");
    if (!(c.edge_length > 0.0)) fail("'domain.edge_length' must be > 0");
    if (!(c.youngs_modulus > 0.0)) fail("'material.E' must be > 0");
    if (!(c.poisson_ratio > 0.0 && c.poisson_ratio < 0.5)) {
        fail("'material.nu' must lie in (0, 0.5)");
    }
    if (!(c.thickness > 0.0)) fail("'material.thickness' must be > 0");
    if (c.supports.empty()) fail("'supports' must list at least one support");
    if (c.loads.empty()) fail("'loads' must list at least one load");
    if (c.smn_nodes.empty() && c.smn_points.empty()) fail("'smn' must select at least one node");
    if (!c.smn_nodes.empty() && !c.smn_points.empty()) {
        fail("'smn' takes either 'nodes' or 'points', not both");
    }
    if (c.target_curve.empty()) fail("'target_curve' is required");
    if (!(c.pr > 0.0 && c.pr < 1.0)) fail("'optimizer.pr' must lie in (0, 1)");
    if (c.max_iters < 0) fail("'optimizer.max_iters' must be >= 0");
    if (c.masks_x < 1 || c.masks_y < 1) fail("'optimizer.masks_x/masks_y' must be >= 1");
    if (!(c.r_min > 0.0 && c.r_min < c.r_max)) fail("'optimizer.r_min' must satisfy 0 < r_min < r_max");
    if (!(c.volume_fraction > 0.0 && c.volume_fraction <= 1.0)) {
        fail("'optimizer.volume_fraction' must lie in (0, 1]");
    }
    if (!(c.delta_f > 0.0)) fail("'optimizer.delta_f' must be > 0");
    if (c.stall_window < 1) fail("'optimizer.stall_window' must be >= 1");
    if (!(c.force_lo < c.force_hi)) fail("'force.limits' must be ordered");
    if (c.circle_segments < 8) fail("'contact.circle_segments' must be >= 8");
    if (c.max_uzawa < 1) fail("'contact.max_uzawa' must be >= 1");
    if (c.fsd_coefficients < 1) fail("'fsd.coefficients' must be >= 1");
    if (c.beta < 1) fail("'smoothing.beta' must be >= 1");
    if (c.load_steps < 1) fail("'solver.load_steps' must be >= 1");
    for (const SupportConfig& s : c.supports) {
        if (s.fix != "x" && s.fix != "y" && s.fix != "xy") {
            fail("'supports.fix' must be 'x', 'y' or 'xy'");
        }
    }
    if (c.symmetry) {
        if (c.symmetry->axis != "vertical" && c.symmetry->axis != "horizontal") {
            fail("'symmetry.axis' must be 'vertical' or 'horizontal'");
        }
    }
}

}  // namespace

ProblemConfig parse_config_text(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }

    require_keys(j, "", {"domain", "material", "supports", "loads", "force", "smn",
                         "target_curve", "initial_design", "regions", "optimizer", "contact",
                         "fsd", "smoothing", "solver", "seed", "symmetry"});

    ProblemConfig c;
    c.base_dir = base_dir;

    if (j.contains("domain")) {
        const json& d = j.at("domain");
        require_keys(d, "domain", {"cols", "rows", "edge_length"});
        c.cols = get_int(d, "domain", "cols", c.cols);
        c.rows = get_int(d, "domain", "rows", c.rows);
        c.edge_length = get_number(d, "domain", "edge_length", c.edge_length);
    }
    if (j.contains("material")) {
        const json& m = j.at("material");
        require_keys(m, "material", {"E", "nu", "thickness"});
        c.youngs_modulus = get_number(m, "material", "E", c.youngs_modulus);
        c.poisson_ratio = get_number(m, "material", "nu", c.poisson_ratio);
        c.thickness = get_number(m, "material", "thickness", c.thickness);
    }
    if (j.contains("supports")) {
        if (!j.at("supports").is_array()) fail("'supports' must be an array");
        for (const json& s : j.at("supports")) {
            SupportConfig sc;
            sc.where = parse_selector(s, "supports");
            if (s.contains("fix")) {
                if (!s.at("fix").is_string()) fail("'supports.fix' must be a string");
                sc.fix = s.at("fix").get<std::string>();
            }
            if (s.contains("direction")) fail("unknown key 'supports.direction'");
            c.supports.push_back(sc);
        }
    }
    if (j.contains("loads")) {
        if (!j.at("loads").is_array()) fail("'loads' must be an array");
        for (const json& l : j.at("loads")) {
            LoadConfig lc;
            lc.where = parse_selector(l, "loads");
            if (l.contains("fix")) fail("unknown key 'loads.fix'");
            if (!l.contains("direction")) fail("'loads' entries need a 'direction'");
            lc.direction = get_vec2(l.at("direction"), "loads.direction");
            if (lc.direction.norm() <= 0.0) fail("'loads.direction' must be nonzero");
            lc.direction.normalize();
            c.loads.push_back(lc);
        }
    }
    if (j.contains("force")) {
        const json& f = j.at("force");
        require_keys(f, "force", {"initial", "limits"});
        if (f.contains("limits")) {
            const json& lim = f.at("limits");
            if (!lim.is_array() || lim.size() != 2) fail("'force.limits' must be [lo, hi]");
            c.force_lo = lim[0].get<double>();
            c.force_hi = lim[1].get<double>();
        }
        c.initial_force = get_number(f, "force", "initial", 0.5 * (c.force_lo + c.force_hi));
    } else {
        c.initial_force = 0.5 * (c.force_lo + c.force_hi);
    }
    if (j.contains("smn")) {
        const json& s = j.at("smn");
        require_keys(s, "smn", {"nodes", "points"});
        if (s.contains("nodes")) {
            for (const json& n : s.at("nodes")) {
                if (!n.is_number_integer()) fail("'smn.nodes' must contain integers");
                c.smn_nodes.push_back(n.get<int>());
            }
        }
        if (s.contains("points")) {
            for (const json& p : s.at("points")) {
                c.smn_points.push_back(get_vec2(p, "smn.points"));
            }
        }
    }
    if (j.contains("target_curve")) {
        if (!j.at("target_curve").is_string()) fail("'target_curve' must be a string path");
        c.target_curve = j.at("target_curve").get<std::string>();
    }
    if (j.contains("initial_design")) {
        if (!j.at("initial_design").is_string()) fail("'initial_design' must be a string path");
        c.initial_design = j.at("initial_design").get<std::string>();
    }
    if (j.contains("regions")) {
        if (!j.at("regions").is_array()) fail("'regions' must be an array");
        for (const json& r : j.at("regions")) {
            require_keys(r, "regions", {"rect", "state"});
            RegionConfig rc;
            if (!r.contains("rect")) fail("'regions' entries need a 'rect'");
            rc.rect = get_rect(r.at("rect"), "regions.rect");
            if (!r.contains("state") || !r.at("state").is_string()) {
                fail("'regions.state' must be 'solid' or 'void'");
            }
            const std::string state = r.at("state").get<std::string>();
            if (state != "solid" && state != "void") {
                fail("'regions.state' must be 'solid' or 'void'");
            }
            rc.solid = (state == "solid");
            c.regions.push_back(rc);
        }
    }
    if (j.contains("optimizer")) {
        const json& o = j.at("optimizer");
        require_keys(o, "optimizer",
                     {"pr", "max_iters", "masks_x", "masks_y", "r_min", "r_max",
                      "volume_fraction", "lambda_v", "delta_f", "stall_window",
                      "mutation_scale"});
        c.pr = get_number(o, "optimizer", "pr", c.pr);
        c.max_iters = get_int(o, "optimizer", "max_iters", c.max_iters);
        c.masks_x = get_int(o, "optimizer", "masks_x", c.masks_x);
        c.masks_y = get_int(o, "optimizer", "masks_y", c.masks_y);
        c.r_min = get_number(o, "optimizer", "r_min", c.r_min);
        c.r_max = get_number(o, "optimizer", "r_max", c.r_max);
        c.volume_fraction = get_number(o, "optimizer", "volume_fraction", c.volume_fraction);
        c.lambda_v = get_number(o, "optimizer", "lambda_v", c.lambda_v);
        c.delta_f = get_number(o, "optimizer", "delta_f", c.delta_f);
        c.stall_window = get_int(o, "optimizer", "stall_window", c.stall_window);
        c.mutation_scale = get_number(o, "optimizer", "mutation_scale", c.mutation_scale);
    }
    if (j.contains("contact")) {
        const json& ct = j.at("contact");
        require_keys(ct, "contact",
                     {"eps_n", "eps_s", "search_radius", "circle_segments", "gap_tol_factor",
                      "max_uzawa", "penetration_cap"});
        c.eps_n = get_number(ct, "contact", "eps_n", c.eps_n);
        c.eps_s = get_number(ct, "contact", "eps_s", c.eps_s);
        c.search_radius = get_number(ct, "contact", "search_radius", c.search_radius);
        c.circle_segments = get_int(ct, "contact", "circle_segments", c.circle_segments);
        c.gap_tol_factor = get_number(ct, "contact", "gap_tol_factor", c.gap_tol_factor);
        c.max_uzawa = get_int(ct, "contact", "max_uzawa", c.max_uzawa);
        c.penetration_cap = get_number(ct, "contact", "penetration_cap", c.penetration_cap);
    }
    if (j.contains("fsd")) {
        const json& f = j.at("fsd");
        require_keys(f, "fsd", {"coefficients", "weights", "zeta_per_mode"});
        c.fsd_coefficients = get_int(f, "fsd", "coefficients", c.fsd_coefficients);
        if (f.contains("weights")) {
            const json& w = f.at("weights");
            if (!w.is_array() || w.size() != 4) {
                fail("'fsd.weights' must be [lambda_a, lambda_b, lambda_L, lambda_theta]");
            }
            c.weight_a = w[0].get<double>();
            c.weight_b = w[1].get<double>();
            c.weight_length = w[2].get<double>();
            c.weight_theta = w[3].get<double>();
        }
        c.zeta_per_mode = get_bool(f, "fsd", "zeta_per_mode", c.zeta_per_mode);
    }
    if (j.contains("smoothing")) {
        const json& s = j.at("smoothing");
        require_keys(s, "smoothing", {"beta"});
        c.beta = get_int(s, "smoothing", "beta", c.beta);
    }
    if (j.contains("solver")) {
        const json& s = j.at("solver");
        require_keys(s, "solver", {"load_steps", "tol_rel", "tol_abs", "max_newton", "min_step"});
        c.load_steps = get_int(s, "solver", "load_steps", c.load_steps);
        c.tol_rel = get_number(s, "solver", "tol_rel", c.tol_rel);
        c.tol_abs = get_number(s, "solver", "tol_abs", c.tol_abs);
        c.max_newton = get_int(s, "solver", "max_newton", c.max_newton);
        c.min_step = get_number(s, "solver", "min_step", c.min_step);
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
            fail("'seed' must be an integer");
        }
        c.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("symmetry")) {
        const json& s = j.at("symmetry");
        require_keys(s, "symmetry", {"axis", "position"});
        SymmetryConfig sym;
        if (s.contains("axis")) {
            if (!s.at("axis").is_string()) fail("'symmetry.axis' must be a string");
            sym.axis = s.at("axis").get<std::string>();
        }
        sym.position = get_number(s, "symmetry", "position", 0.0);
        c.symmetry = sym;
    }

    validate(c);
    return c;
}

ProblemConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::filesystem::path p(path);
    return parse_config_text(ss.str(), p.has_parent_path() ? p.parent_path().string() : ".");
}

std::string serialize_config(const ProblemConfig& c) {
    json j;
    j["domain"] = {{"cols", c.cols}, {"rows", c.rows}, {"edge_length", c.edge_length}};
    j["material"] = {{"E", c.youngs_modulus}, {"nu", c.poisson_ratio}, {"thickness", c.thickness}};

    json supports = json::array();
    for (const SupportConfig& s : c.supports) {
        json e;
        if (s.where.node) e["node"] = *s.where.node;
        if (s.where.at) e["at"] = {s.where.at->x(), s.where.at->y()};
        if (s.where.rect) e["rect"] = *s.where.rect;
        e["fix"] = s.fix;
        supports.push_back(e);
    }
    j["supports"] = supports;

    json loads = json::array();
    for (const LoadConfig& l : c.loads) {
        json e;
        if (l.where.node) e["node"] = *l.where.node;
        if (l.where.at) e["at"] = {l.where.at->x(), l.where.at->y()};
        if (l.where.rect) e["rect"] = *l.where.rect;
        e["direction"] = {l.direction.x(), l.direction.y()};
        loads.push_back(e);
    }
    j["loads"] = loads;

    j["force"] = {{"initial", c.initial_force}, {"limits", {c.force_lo, c.force_hi}}};

    json smn;
    if (!c.smn_nodes.empty()) smn["nodes"] = c.smn_nodes;
    if (!c.smn_points.empty()) {
        json pts = json::array();
        for (const Vec2& p : c.smn_points) pts.push_back({p.x(), p.y()});
        smn["points"] = pts;
    }
    j["smn"] = smn;
    j["target_curve"] = c.target_curve;
    if (!c.initial_design.empty()) j["initial_design"] = c.initial_design;

    if (!c.regions.empty()) {
        json regions = json::array();
        for (const RegionConfig& r : c.regions) {
            regions.push_back({{"rect", r.rect}, {"state", r.solid ? "solid" : "void"}});
        }
        j["regions"] = regions;
    }

    j["optimizer"] = {{"pr", c.pr},
                      {"max_iters", c.max_iters},
                      {"masks_x", c.masks_x},
                      {"masks_y", c.masks_y},
                      {"r_min", c.r_min},
                      {"r_max", c.r_max},
                      {"volume_fraction", c.volume_fraction},
                      {"lambda_v", c.lambda_v},
                      {"delta_f", c.delta_f},
                      {"stall_window", c.stall_window},
                      {"mutation_scale", c.mutation_scale}};
    j["contact"] = {{"eps_n", c.eps_n},
                    {"eps_s", c.eps_s},
                    {"search_radius", c.search_radius},
                    {"circle_segments", c.circle_segments},
                    {"gap_tol_factor", c.gap_tol_factor},
                    {"max_uzawa", c.max_uzawa},
                    {"penetration_cap", c.penetration_cap}};
    j["fsd"] = {{"coefficients", c.fsd_coefficients},
                {"weights", {c.weight_a, c.weight_b, c.weight_length, c.weight_theta}},
                {"zeta_per_mode", c.zeta_per_mode}};
    j["smoothing"] = {{"beta", c.beta}};
    j["solver"] = {{"load_steps", c.load_steps},
                   {"tol_rel", c.tol_rel},
                   {"tol_abs", c.tol_abs},
                   {"max_newton", c.max_newton},
                   {"min_step", c.min_step}};
    j["seed"] = c.seed;
    if (c.symmetry) {
        j["symmetry"] = {{"axis", c.symmetry->axis}, {"position", c.symmetry->position}};
    }
    return j.dump(2) + "\n";
}

}  // namespace mtop
