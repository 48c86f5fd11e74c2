#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "delaybeam/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Clamped-free tensioned beam with delayed internal damping: "
                 "simulation, stability region, sweeps, static closed-form checks"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "configuration file (key = value)")
            ->required();
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--override", overrides,
                        "key=value override applied after the config file");
    };

    auto* simulate = app.add_subcommand("simulate", "run one simulation");
    add_common(simulate);
    auto* region = app.add_subcommand("region", "sample the stability region");
    add_common(region);
    auto* sweep = app.add_subcommand("sweep", "simulate an (alpha, xi) grid");
    add_common(sweep);
    sweep->add_option("--workers", workers, "worker threads for the sweep");
    auto* resolvent =
        app.add_subcommand("resolvent", "static closed-form solve and cross-check");
    add_common(resolvent);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : delaybeam::kExitConfig;
    }

    try {
        delaybeam::RunConfig cfg = delaybeam::parse_config(config_path);
        for (const auto& o : overrides) delaybeam::apply_override(cfg, o);

        if (simulate->parsed()) return delaybeam::cmd_simulate(cfg, out_dir);
        if (region->parsed()) return delaybeam::cmd_region(cfg, out_dir);
        if (sweep->parsed()) return delaybeam::cmd_sweep(cfg, out_dir, workers);
        if (resolvent->parsed()) return delaybeam::cmd_resolvent(cfg, out_dir);
    } catch (const delaybeam::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return delaybeam::kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return delaybeam::kExitNumerical;
    }
    return delaybeam::kExitConfig;
}
