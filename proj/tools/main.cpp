// Command-line front end: synthesis runs, single-design replays, mesh dumps.

#include "morphtop/config.hpp"
#include "morphtop/hexmesh.hpp"
#include "morphtop/io.hpp"
#include "morphtop/pipeline.hpp"
#include "morphtop/version.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int cmd_synth(const std::string& config_path, const std::string& out_dir,
              std::int64_t seed_override, int frames_every) {
    mtop::ProblemConfig cfg = mtop::parse_config(config_path);
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);

    const mtop::SynthesisResult result = mtop::run_synthesis(cfg, out_dir, frames_every);
    const auto& best = result.run.best;
    std::cout << "iterations " << result.run.iterations << "\n";
    std::cout << "objective " << best.objective << "\n";
    std::cout << "volume_fraction " << best.volume << "\n";
    std::cout << "force " << best.design.force << " N\n";
    std::cout << "artifacts " << result.out_dir << "\n";
    if (result.run.stalled) {
        std::cout << "warning: terminated on stall (best objective improved by less than "
                  << cfg.delta_f << " over " << cfg.stall_window << " iterations)\n";
    }
    if (!best.feasible) {
        std::cout << "warning: best design is penalized (" << best.diag.note << ")\n";
    }
    return 0;
}

int cmd_replay(const std::string& design_path, const std::string& config_path,
               const std::string& out_dir) {
    const mtop::ProblemConfig cfg = mtop::parse_config(config_path);
    const mtop::DesignVector design = mtop::read_design_file(design_path);
    const mtop::Evaluation ev = mtop::replay_design(cfg, design, out_dir);
    std::cout << "objective " << ev.candidate.objective << "\n";
    if (ev.artifacts) {
        std::cout << "end_compliance " << ev.artifacts->compliance << " N mm\n";
        if (ev.artifacts->zetas.valid) {
            std::cout << "zeta_s " << 100.0 * ev.artifacts->zetas.zeta_shape << " %\n";
            std::cout << "zeta_l " << 100.0 * ev.artifacts->zetas.zeta_length << " %\n";
        }
        std::cout << "active_contacts " << ev.artifacts->contacts.size() << "\n";
    } else {
        std::cout << "penalized: " << ev.candidate.diag.note << "\n";
    }
    std::cout << "artifacts " << out_dir << "\n";
    return 0;
}

int cmd_mesh_dump(const std::string& config_path) {
    const mtop::ProblemConfig cfg = mtop::parse_config(config_path);
    const mtop::HexMesh mesh = mtop::HexMesh::generate(cfg.cols, cfg.rows, cfg.edge_length);
    mesh.dump(std::cout);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"morphtop: synthesis of contact-aided shape-morphing compliant mechanisms"};
    app.set_version_flag("--version", std::string(mtop::kVersion));
    app.require_subcommand(1);

    std::string config_path, design_path, out_dir = "out";
    std::int64_t seed_override = -1;
    int frames_every = 0;

    CLI::App* synth = app.add_subcommand("synth", "Run a synthesis from a problem config");
    synth->add_option("config", config_path, "problem config file (JSON)")->required();
    synth->add_option("-o,--out", out_dir, "output directory");
    synth->add_option("--seed", seed_override, "override the config seed");
    synth->add_option("--frames-every", frames_every, "write an SVG frame every K iterations");

    CLI::App* replay = app.add_subcommand("replay", "Re-analyze a stored design vector");
    replay->add_option("design", design_path, "design vector file")->required();
    replay->add_option("config", config_path, "problem config file (JSON)")->required();
    replay->add_option("-o,--out", out_dir, "output directory");

    CLI::App* mesh_dump = app.add_subcommand("mesh-dump", "Print the domain discretization");
    mesh_dump->add_option("config", config_path, "problem config file (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed()) return cmd_synth(config_path, out_dir, seed_override, frames_every);
        if (replay->parsed()) return cmd_replay(design_path, config_path, out_dir);
        if (mesh_dump->parsed()) return cmd_mesh_dump(config_path);
    } catch (const mtop::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
