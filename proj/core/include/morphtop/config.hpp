#pragma once

/**
 * @file config.hpp
 * @brief Problem configuration: JSON ingestion with hard validation.
 *
 * Omitted parameters fall back to the reference synthesis defaults. Unknown
 * keys are hard errors; validation failures name the offending key.
 */

#include "morphtop/geom.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtop {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Node selector: exactly one of `node`, `at`, `rect` is set.
struct SelectorConfig {
    std::optional<int> node;
    std::optional<Vec2> at;                       // nearest node
    std::optional<std::array<double, 4>> rect;    // all nodes inside [x0,y0,x1,y1]
};

struct SupportConfig {
    SelectorConfig where;
    std::string fix = "xy";  // "x", "y" or "xy"
};

struct LoadConfig {
    SelectorConfig where;
    Vec2 direction = Vec2(1.0, 0.0);
};

struct RegionConfig {
    std::array<double, 4> rect{};
    bool solid = false;  // false -> forced void
};

struct SymmetryConfig {
    std::string axis = "vertical";  // mirror line orientation
    double position = 0.0;          // x (vertical) or y (horizontal) of the line
};

struct ProblemConfig {
    // domain
    int cols = 30;
    int rows = 30;
    double edge_length = 1.0;  // mm

    // material
    double youngs_modulus = 2100.0;  // MPa
    double poisson_ratio = 0.33;
    double thickness = 1.0;  // mm

    std::vector<SupportConfig> supports;
    std::vector<LoadConfig> loads;
    double initial_force = 0.0;  // N; 0 = midpoint of the limits
    double force_lo = -1000.0;
    double force_hi = 1000.0;

    std::vector<int> smn_nodes;
    std::vector<Vec2> smn_points;
    std::string target_curve;    // path, relative to the config file
    std::string initial_design;  // optional design-vector file; empty = mask grid

    std::vector<RegionConfig> regions;

    // optimizer
    double pr = 0.08;
    int max_iters = 5000;
    int masks_x = 12;
    int masks_y = 8;
    double r_min = 0.1;  // mm
    double r_max = 8.0;  // mm
    double volume_fraction = 0.30;
    double lambda_v = 20.0;
    double delta_f = 0.01;
    int stall_window = 10;
    double mutation_scale = 0.10;  // m = scale * max(L1, L2)

    // contact
    double eps_n = 0.0;          // 0 -> 60 E / L2
    double eps_s = 0.0;          // 0 -> 5 E / L2
    double search_radius = 0.0;  // 0 -> 2 a
    int circle_segments = 64;
    double gap_tol_factor = 1e-4;  // gap tolerance = factor * a
    int max_uzawa = 10;
    double penetration_cap = 0.0;  // 0 -> search_radius / 4

    // shape objective
    int fsd_coefficients = 50;
    double weight_a = 100.0;
    double weight_b = 100.0;
    double weight_length = 1.0;
    double weight_theta = 1.0;
    bool zeta_per_mode = false;

    // smoothing
    int beta = 10;

    // solver
    int load_steps = 10;
    double tol_rel = 1e-6;
    double tol_abs = 1e-10;
    int max_newton = 25;
    double min_step = 1.0 / 256.0;

    std::uint64_t seed = 0;
    std::optional<SymmetryConfig> symmetry;

    std::string base_dir;  // directory of the config file (not serialized)
};

ProblemConfig parse_config(const std::string& path);
ProblemConfig parse_config_text(const std::string& json_text, const std::string& base_dir);
std::string serialize_config(const ProblemConfig& cfg);

}  // namespace mtop
