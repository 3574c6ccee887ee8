// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface of the coverage toolkit:
//   thzcov coverage --config cfg.json [--mode analytic|mc|both] ...
//   thzcov sweep    --config cfg.json --param lambda_b --from 0 --to 4 --steps 17
//   thzcov figure   --preset fig3
// Single points print JSON, sweeps and figures print CSV (UTF-8, LF).
// Exit codes: 2 config error, 3 quadrature non-convergence, 4 mode
// unavailable.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thzcov/driver.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string mode = "both";
    std::string mc_mode = "distribution";
    std::uint64_t seed = 1;
    std::int64_t realizations = 100000;
    int threads = 0;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_mode = true) {
    cmd->add_option("--config", args.config_path, "scenario JSON file (defaults built in)");
    if (with_mode) {
        cmd->add_option("--mode", args.mode, "engines to run: analytic, mc, or both")
            ->check(CLI::IsMember({"analytic", "mc", "both"}));
        cmd->add_option("--mc-mode", args.mc_mode, "Monte-Carlo fidelity")
            ->check(CLI::IsMember({"distribution", "full_channel"}));
    }
    cmd->add_option("--seed", args.seed, "RNG seed");
    cmd->add_option("--realizations", args.realizations, "Monte-Carlo realization count");
    cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)");
    cmd->add_option("--set", args.overrides,
                    "config override key=value; dB-valued keys use the _db suffix");
}

thzcov::NetworkConfig resolve_config(const CommonArgs& args) {
    nlohmann::json raw = args.config_path.empty()
                             ? thzcov::to_json(thzcov::default_paper_config())
                             : [&] {
                                   std::ifstream in(args.config_path);
                                   if (!in) {
                                       throw thzcov::ConfigError(
                                           thzcov::ConfigError::Kind::bad_value,
                                           "cannot open config file '" + args.config_path + "'");
                                   }
                                   nlohmann::json j;
                                   try {
                                       in >> j;
                                   } catch (const nlohmann::json::exception& e) {
                                       throw thzcov::ConfigError(
                                           thzcov::ConfigError::Kind::bad_value,
                                           "malformed JSON in '" + args.config_path +
                                               "': " + e.what());
                                   }
                                   return j;
                               }();

    for (const auto& s : args.overrides) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            throw thzcov::ConfigError(thzcov::ConfigError::Kind::bad_value,
                                      "override '" + s + "' is not of the form key=value");
        }
        const std::string key = s.substr(0, eq);
        double value = 0.0;
        try {
            value = std::stod(s.substr(eq + 1));
        } catch (const std::exception&) {
            throw thzcov::ConfigError(thzcov::ConfigError::Kind::bad_value,
                                      "override '" + s + "' has a non-numeric value");
        }
        // a linear override displaces a stale dB spelling and vice versa
        if (key.size() > 3 && key.ends_with("_db")) {
            raw.erase(key.substr(0, key.size() - 3));
        } else {
            raw.erase(key + "_db");
        }
        raw[key] = value;
    }
    return thzcov::validate(raw);
}

thzcov::RunOptions resolve_run_options(const CommonArgs& args) {
    thzcov::RunOptions opts;
    opts.mode = args.mode == "analytic" ? thzcov::RunMode::analytic
               : args.mode == "mc"      ? thzcov::RunMode::mc
                                        : thzcov::RunMode::both;
    opts.mc_mode = args.mc_mode == "full_channel" ? thzcov::McMode::full_channel
                                                  : thzcov::McMode::distribution;
    opts.seed = args.seed;
    opts.realizations = args.realizations;
    opts.threads = args.threads;
    return opts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage probability of a RIS-assisted indoor THz downlink"};
    app.require_subcommand(1);

    CommonArgs point_args;
    auto* point_cmd = app.add_subcommand("coverage", "evaluate one scenario, print JSON");
    add_common(point_cmd, point_args);

    CommonArgs sweep_args;
    thzcov::SweepSpec spec;
    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter, print CSV");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--param", spec.param, "config field to sweep")->required();
    sweep_cmd->add_option("--from", spec.from, "grid start")->required();
    sweep_cmd->add_option("--to", spec.to, "grid end")->required();
    sweep_cmd->add_option("--steps", spec.steps, "grid size (>= 2)")->required();
    sweep_cmd->add_flag("--log", spec.log_spacing, "geometric spacing");

    CommonArgs figure_args;
    std::string preset;
    auto* figure_cmd = app.add_subcommand("figure", "run a figure preset, print CSV");
    add_common(figure_cmd, figure_args, false);
    figure_cmd->add_option("--preset", preset, "fig2..fig7")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (point_cmd->parsed()) {
            const auto cfg = resolve_config(point_args);
            const auto record = thzcov::run_point(cfg, resolve_run_options(point_args));
            std::cout << record.dump(2) << "\n";
        } else if (sweep_cmd->parsed()) {
            const auto cfg = resolve_config(sweep_args);
            spec.run = resolve_run_options(sweep_args);
            const auto points = thzcov::run_sweep(cfg, spec);
            std::cout << thzcov::sweep_to_csv(cfg, spec, points);
        } else if (figure_cmd->parsed()) {
            const auto fig = thzcov::figure_preset(preset, resolve_run_options(figure_args));
            std::cout << fig.to_csv();
        }
    } catch (const thzcov::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const thzcov::ScenarioMismatchError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const thzcov::QuadratureError& e) {
        std::cerr << "quadrature error: " << e.what() << "\n";
        return 3;
    } catch (const thzcov::ModeUnavailableError& e) {
        std::cerr << "mode unavailable: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
