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

#ifndef EFAS_RUNNER_HPP
#define EFAS_RUNNER_HPP

#include "efas/monte_carlo.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace efas
{

inline constexpr const char *kToolVersion = "efas-sim 0.1.0";

using KeyValues = std::map<std::string, std::string>;

enum class SumRateVary
{
    kSnr,
    kK,
    kM
};

/// Fully resolved run description. `resolved` holds every key after defaults,
/// config file and overrides were merged; it is echoed into output metadata.
struct RunConfig
{
    std::string command;
    Scenario scenario; // base scenario (physical surface for physical-omega)
    std::uint64_t seed = 1;
    std::size_t trials = 100000;
    std::vector<double> snr_grid_db;
    std::vector<double> omega_sw_list;
    std::vector<int> k_grid;
    std::vector<int> m_grid;
    std::string output_path;
    double confidence = 0.95;
    unsigned workers = 0;
    double r0 = 1.0;
    double beta_dl = 0.01;
    int bins = 100;
    SumRateVary vary = SumRateVary::kSnr;

    // physical-omega
    double freq_ghz = 30.0;
    cplx z_sur{100.0, 100.0};
    std::vector<double> d_grid;

    KeyValues resolved;

    McOptions mc_options() const;
    McOptions mc_options(std::size_t point_index) const; // derived per-point seed
};

// Parse "key = value" lines; '#' starts a comment. Throws ConfigError.
KeyValues parse_config_text(std::string_view text);
KeyValues read_config_file(const std::string &path);

KeyValues default_keys(std::string_view command, std::string_view vary = "snr");

/// Merge defaults < file < overrides (flags win) and build the RunConfig.
RunConfig resolve_config(const std::string &command, const KeyValues &file, const KeyValues &overrides);

// Comma list or start:step:stop range.
std::vector<double> parse_double_list(const std::string &text);
std::vector<int> parse_int_list(const std::string &text);

std::string run_fig_outage(const RunConfig &cfg);
std::string run_fig_capacity(const RunConfig &cfg);
std::string run_fig_zf_dist(const RunConfig &cfg);
std::string run_fig_sumrate(const RunConfig &cfg);
std::string run_physical_omega(const RunConfig &cfg);

struct ValidationCheck
{
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    double margin = 0.0; // threshold - value; negative when failing
    std::string detail;
};

struct ValidationReport
{
    std::vector<ValidationCheck> checks;
    std::string text;
    std::string json;
    bool passed = false;
};

ValidationReport run_validate(const RunConfig &cfg);

// Dispatch on cfg.command; validate returns the report text.
std::string run_command(const RunConfig &cfg, bool *validation_passed = nullptr);

} // namespace efas

#endif
