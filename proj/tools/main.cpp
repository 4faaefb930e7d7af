#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qar/cli/commands.hpp"
#include "qar/errors.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_path;
    int workers = 0;
    bool reduced = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_reduced) {
    cmd->add_option("--config", opts.config_path, "configuration file (key = value)");
    cmd->add_option("--set", opts.overrides, "override a config key, key=value")
        ->take_all();
    cmd->add_option("--out", opts.out_path, "output CSV path (default stdout)");
    cmd->add_option("--workers", opts.workers, "sweep worker threads");
    if (with_reduced)
        cmd->add_flag("--reduced", opts.reduced,
                      "use the three-level reduced model at exact resonance");
}

qar::cli::KeyValueConfig load_config(const CommonOptions& opts) {
    qar::cli::KeyValueConfig cfg =
        opts.config_path.empty()
            ? qar::cli::KeyValueConfig::defaults()
            : qar::cli::KeyValueConfig::from_file(opts.config_path);
    cfg.apply_overrides(opts.overrides);
    if (opts.workers > 0) cfg.set("workers", std::to_string(opts.workers));
    return cfg;
}

using Command =
    std::function<int(const qar::cli::KeyValueConfig&, std::ostream&)>;

int run_with_output(const CommonOptions& opts, const Command& command) {
    const qar::cli::KeyValueConfig cfg = load_config(opts);
    std::string out_path = opts.out_path;
    if (out_path.empty()) out_path = cfg.get_string("out", "");
    if (out_path.empty()) return command(cfg, std::cout);
    std::ofstream file(out_path);
    if (!file) throw qar::ConfigError("cannot open output file '" + out_path + "'");
    return command(cfg, file);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collective-spin absorption refrigerator simulator"};
    app.require_subcommand(1);

    CommonOptions steady_opts, sweep_opts, dynamics_opts, rcmap_opts, reduced_opts;
    CLI::App* steady = app.add_subcommand("steady", "single steady-state evaluation");
    add_common(steady, steady_opts, true);
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(sweep, sweep_opts, true);
    CLI::App* dynamics =
        app.add_subcommand("dynamics", "thermalization times for an Ohmic bath");
    add_common(dynamics, dynamics_opts, false);
    CLI::App* rcmap =
        app.add_subcommand("rcmap", "reaction-coordinate mapping of a peaked bath");
    add_common(rcmap, rcmap_opts, false);
    CLI::App* reduced =
        app.add_subcommand("reduced", "three-level reduced model reference values");
    add_common(reduced, reduced_opts, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (steady->parsed())
            return run_with_output(
                steady_opts, [&](const qar::cli::KeyValueConfig& cfg,
                                 std::ostream& out) {
                    return qar::cli::cmd_steady(cfg, steady_opts.reduced, out);
                });
        if (sweep->parsed())
            return run_with_output(
                sweep_opts, [&](const qar::cli::KeyValueConfig& cfg,
                                std::ostream& out) {
                    return qar::cli::cmd_sweep(cfg, sweep_opts.reduced, out);
                });
        if (dynamics->parsed())
            return run_with_output(dynamics_opts, qar::cli::cmd_dynamics);
        if (rcmap->parsed())
            return run_with_output(rcmap_opts, qar::cli::cmd_rcmap);
        if (reduced->parsed())
            return run_with_output(reduced_opts, qar::cli::cmd_reduced);
    } catch (const qar::ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const qar::DomainError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const qar::NumericalError& err) {
        std::cerr << "numerical error: " << err.what() << '\n';
        return 3;
    }
    return 0;
}
