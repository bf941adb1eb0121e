// SPDX-License-Identifier: Apache-2.0
//
// his-sim: simulator for holographic interference surfaces
// Copyright (C) 2026 The his-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line experiment runner.
//
//   his_sim sweep  [--config cfg.json] [--seed N] [--out DIR] [--quiet]
//   his_sim single [--config cfg.json] [--seed N] [--out DIR] [--theta DEG] [--quiet]
//   his_sim noise  [--config cfg.json] [--seed N] [--out DIR] [--quiet]
//
// Exit codes: 0 success, 2 invalid configuration or usage, 3 runtime or I/O failure.

#include "his/errors.hpp"
#include "his/experiment.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace
{
    constexpr int exit_ok = 0;
    constexpr int exit_config = 2;
    constexpr int exit_runtime = 3;

    struct Options
    {
        std::string config_path;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> out;
        std::optional<double> theta;
        bool quiet = false;
    };

    his::ExperimentConfig resolve_config(const Options &opt)
    {
        his::ExperimentConfig cfg;
        if (!opt.config_path.empty())
            cfg = his::load_config(opt.config_path);
        if (opt.seed)
            cfg.seed = *opt.seed;
        if (opt.out)
            cfg.output_dir = *opt.out;
        if (opt.theta)
            cfg.source.theta_deg = *opt.theta;
        cfg.validate();
        return cfg;
    }

    void print_sweep(const his::SweepReport &r)
    {
        std::cout << "true_deg  est_deg    err_deg\n";
        for (const auto &row : r.rows)
            std::cout << row.true_deg << "\t" << row.est_deg << "\t" << row.err_deg << "\n";
        std::cout << "max |err| = " << r.max_abs_error_deg << " deg, RMSE = " << r.rmse_deg << " deg\n";
        std::cout << "wrote sweep.csv, report.json, plot.gp to " << r.config.output_dir << "\n";
    }

    void print_single(const his::SingleReport &r)
    {
        std::cout << "true DOA " << r.true_deg << " deg, estimated " << r.estimate.theta_deg << " deg\n";
        std::cout << "wrote spectrum.csv, holograms.csv, phase.csv, report.json, plot.gp to " << r.config.output_dir
                  << "\n";
    }

    void print_noise(const his::NoiseReport &r)
    {
        std::cout << "sigma\trms_field_error\tdoa_rmse_deg\n";
        for (const auto &row : r.rows)
            std::cout << row.sigma << "\t" << row.rms_field_error << "\t" << row.doa_rmse_deg << "\n";
        std::cout << "wrote noise.csv, report.json to " << r.config.output_dir << "\n";
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Holographic interference surface simulator"};
    app.set_version_flag("--version", std::string(his::tool_version));
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&opt](CLI::App *cmd) {
        cmd->add_option("--config", opt.config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
        cmd->add_option("--seed", opt.seed, "Base random seed");
        cmd->add_option("--out", opt.out, "Output directory");
        cmd->add_flag("--quiet", opt.quiet, "Suppress the console summary");
    };

    auto *sweep = app.add_subcommand("sweep", "DOA sweep over the configured angle range");
    auto *single = app.add_subcommand("single", "Single-angle spectrum, hologram and phase dumps");
    auto *noise = app.add_subcommand("noise", "Monte-Carlo recovery error versus object-wave noise");
    add_common(sweep);
    add_common(single);
    add_common(noise);
    single->add_option("--theta", opt.theta, "True DOA in degrees");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }

    try
    {
        const auto cfg = resolve_config(opt);
        if (sweep->parsed())
        {
            const auto r = his::run_sweep(cfg);
            if (!opt.quiet)
                print_sweep(r);
        }
        else if (single->parsed())
        {
            const auto r = his::run_single(cfg);
            if (!opt.quiet)
                print_single(r);
        }
        else if (noise->parsed())
        {
            const auto r = his::run_noise_study(cfg);
            if (!opt.quiet)
                print_noise(r);
        }
    }
    catch (const his::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_runtime;
    }
    return exit_ok;
}
