// SPDX-License-Identifier: Apache-2.0
//
// efas-sim: link-level simulator for surface-wave assisted MU-MIMO downlinks
// Copyright (C) 2026 The efas-sim authors
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

// Command-line front end: figure sweeps, physical Omega table and the
// validation suite. Exit codes: 0 ok, 1 configuration, 2 numerical,
// 3 validation failure.

#include "efas/runner.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

namespace
{

enum ExitCode
{
    kOk = 0,
    kConfig = 1,
    kNumerical = 2,
    kValidation = 3
};

void write_text(const std::string &path, const std::string &text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text) || !out.flush())
        throw efas::ConfigError("cannot write '" + path + "'");
}

struct Options
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<double> confidence;
    std::string out;
    std::string summary;
    unsigned workers = 0;
    std::string vary;
    std::vector<std::string> sets;
};

int run(const std::string &command, const Options &opt)
{
    efas::KeyValues file;
    if (!opt.config.empty())
        file = efas::read_config_file(opt.config);

    efas::KeyValues overrides;
    for (const auto &kv : opt.sets)
    {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw efas::ConfigError("--set expects key=value, got '" + kv + "'");
        overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (opt.seed)
        overrides["seed"] = std::to_string(*opt.seed);
    if (opt.trials)
        overrides["trials"] = std::to_string(*opt.trials);
    if (opt.confidence)
    {
        char buffer[32];
        std::snprintf(buffer, sizeof buffer, "%.17g", *opt.confidence);
        overrides["confidence"] = buffer;
    }
    if (!opt.vary.empty())
        overrides["vary"] = opt.vary;

    efas::RunConfig cfg = efas::resolve_config(command, file, overrides);
    cfg.workers = opt.workers;
    cfg.output_path = opt.out;

    if (command == "validate")
    {
        const auto report = efas::run_validate(cfg);
        write_text(opt.out, report.text);
        std::string summary = opt.summary;
        if (summary.empty() && !opt.out.empty() && opt.out != "-")
            summary = opt.out + ".json";
        if (!summary.empty())
            write_text(summary, report.json);
        return report.passed ? kOk : kValidation;
    }
    write_text(opt.out, efas::run_command(cfg));
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"efas-sim: surface-wave assisted MU-MIMO link-level simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;

    app.add_option("--config", opt.config, "flat key=value config file")->check(CLI::ExistingFile);
    app.add_option("--seed", opt.seed, "master seed (u64)");
    app.add_option("--trials", opt.trials, "Monte-Carlo trials per grid point");
    app.add_option("--out", opt.out, "output path (default stdout)");
    app.add_option("--workers", opt.workers, "worker threads (0 = hardware)");
    app.add_option("--confidence", opt.confidence, "confidence level for intervals");
    app.add_option("--set", opt.sets, "override one config key, key=value (repeatable)");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"fig-outage", "single-user outage probability versus SNR"},
        {"fig-capacity", "single-user ergodic capacity versus SNR"},
        {"fig-zf-dist", "per-user ZF SINR histogram, ECDF and KS statistic"},
        {"fig-sumrate", "ZF sum rate sweep"},
        {"physical-omega", "Omega_sw and Omega_eq from a physical surface spec"},
        {"validate", "run the validation suite"},
    };
    for (const auto &[name, help] : commands)
    {
        auto *sub = app.add_subcommand(name, help);
        if (name == "fig-sumrate")
            sub->add_option("--vary", opt.vary, "swept quantity")->check(CLI::IsMember({"snr", "k", "m"}));
        if (name == "validate")
            sub->add_option("--summary", opt.summary, "JSON summary path (default <out>.json)");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try
    {
        return run(command, opt);
    }
    catch (const efas::NumericalError &e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
    catch (const efas::SingularChannelError &e)
    {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
    catch (const efas::Error &e)
    {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    }
}
