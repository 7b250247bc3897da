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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "efas/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace efas;

namespace
{

struct Csv
{
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');)
        out.push_back(cell);
    return out;
}

Csv parse_csv(const std::string &text)
{
    Csv csv;
    std::stringstream in(text);
    for (std::string line; std::getline(in, line);)
    {
        if (line.starts_with("#"))
            csv.comments.push_back(line);
        else if (csv.header.empty())
            csv.header = split(line);
        else
            csv.rows.push_back(split(line));
    }
    return csv;
}

double col(const Csv &csv, std::size_t row, const std::string &name)
{
    for (std::size_t c = 0; c < csv.header.size(); ++c)
        if (csv.header[c] == name)
            return std::stod(csv.rows.at(row).at(c));
    FAIL("missing column " << name);
    return 0.0;
}

std::string join(const std::vector<std::string> &cells)
{
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        out += (i ? "," : "") + cells[i];
    return out;
}

RunConfig config(const std::string &command, KeyValues overrides = {})
{
    return resolve_config(command, {}, overrides);
}

int run_cli(const std::string &args)
{
    const char *cli = std::getenv("EFAS_CLI");
    REQUIRE(cli != nullptr);
    const std::string cmd = std::string(cli) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("config text parsing")
{
    const auto kv = parse_config_text("# comment\n seed = 42 \n\nsnr_db=0:10:20 # trailing\ntrials =5\n");
    CHECK(kv.at("seed") == "42");
    CHECK(kv.at("snr_db") == "0:10:20");
    CHECK(kv.at("trials") == "5");
    CHECK(kv.size() == 3);
    CHECK_THROWS_AS(parse_config_text("novalue\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text(" = 3\n"), ConfigError);
    CHECK_THROWS_AS(read_config_file("/nonexistent/efas.cfg"), ConfigError);
}

TEST_CASE("lists and ranges")
{
    CHECK(parse_double_list("0:5:30") == std::vector<double>{0, 5, 10, 15, 20, 25, 30});
    CHECK(parse_double_list("1, 2.5,4") == std::vector<double>{1, 2.5, 4});
    CHECK(parse_double_list("30:-10:0") == std::vector<double>{30, 20, 10, 0});
    CHECK(parse_double_list("0:0.1:0.3").size() == 4);
    CHECK(parse_int_list("1:1:4") == std::vector<int>{1, 2, 3, 4});
    CHECK_THROWS_AS(parse_double_list("0:0:3"), ConfigError);
    CHECK_THROWS_AS(parse_double_list("0:1"), ConfigError);
    CHECK_THROWS_AS(parse_double_list("1,x"), ConfigError);
    CHECK_THROWS_AS(parse_int_list("1.5"), ConfigError);
}

TEST_CASE("resolution order: defaults, then file, then flags")
{
    const KeyValues file{{"seed", "5"}, {"trials", "100"}};
    const KeyValues flags{{"seed", "9"}};
    const auto cfg = resolve_config("fig-outage", file, flags);
    CHECK(cfg.seed == 9);
    CHECK(cfg.trials == 100);
    CHECK(cfg.snr_grid_db.size() == 7);
    CHECK(cfg.omega_sw_list == std::vector<double>{0, 1, 5, 10});
    CHECK(cfg.resolved.at("seed") == "9");

    CHECK_THROWS_AS(resolve_config("fig-outage", {{"bogus", "1"}}, {}), ConfigError);
    CHECK_THROWS_AS(resolve_config("nope", {}, {}), ConfigError);
    CHECK_THROWS_AS(config("fig-outage", {{"confidence", "1.5"}}), ConfigError);
    CHECK_THROWS_AS(config("fig-outage", {{"snr_db", ""}}), ConfigError);
    CHECK_THROWS_AS(config("fig-outage", {{"seed", "-1"}}), ConfigError);
}

TEST_CASE("sum-rate grids reject K > M before running")
{
    CHECK_THROWS_AS(config("fig-sumrate", {{"vary", "m"}, {"m", "4,8"}}), InfeasibleError);
    CHECK_THROWS_AS(config("fig-sumrate", {{"vary", "x"}}), ConfigError);
    const auto k = config("fig-sumrate", {{"vary", "k"}});
    CHECK(k.k_grid.size() == 16);
    CHECK(k.snr_grid_db == std::vector<double>{0, 5, 10});
    const auto m = config("fig-sumrate", {{"vary", "m"}});
    CHECK(m.m_grid == std::vector<int>{8, 16, 32});
}

TEST_CASE("fig-outage: schema, cardinality, ordering of benchmark")
{
    const auto csv = parse_csv(run_fig_outage(config("fig-outage", {{"trials", "20000"}})));
    CHECK(join(csv.header) == "snr_db,omega_sw,omega_eq,pout_analytic,pout_mc,pout_stderr,trials");
    REQUIRE(csv.rows.size() == 28);
    for (std::size_t r = 0; r < 7; ++r)
    {
        CHECK(col(csv, r, "omega_sw") == 0.0);
        for (std::size_t o = 1; o < 4; ++o)
        {
            CHECK(col(csv, r, "snr_db") == col(csv, r + 7 * o, "snr_db"));
            CHECK(col(csv, r, "pout_mc") > col(csv, r + 7 * o, "pout_mc"));
            CHECK(col(csv, r, "pout_analytic") > col(csv, r + 7 * o, "pout_analytic"));
        }
    }
    CHECK(csv.comments.at(0) == std::string("# ") + kToolVersion);
    bool has_seed = false;
    for (const auto &c : csv.comments)
        has_seed = has_seed || c == "# seed = 1";
    CHECK(has_seed);
}

TEST_CASE("fig-capacity: upward shift and echoed grid")
{
    const auto csv = parse_csv(
        run_fig_capacity(config("fig-capacity", {{"trials", "20000"}, {"snr_db", "0,7.5,15,22.5,30"}})));
    CHECK(join(csv.header) == "snr_db,omega_sw,cap_analytic,cap_mc,cap_stderr,cap_asymptote");
    REQUIRE(csv.rows.size() == 20);
    const std::vector<double> grid{0, 7.5, 15, 22.5, 30};
    for (std::size_t r = 0; r < 5; ++r)
    {
        CHECK(col(csv, r, "snr_db") == grid[r]);
        for (std::size_t o = 1; o < 4; ++o)
            CHECK(col(csv, r + 5 * o, "cap_mc") > col(csv, r + 5 * (o - 1), "cap_mc"));
    }
    CHECK(std::isnan(col(csv, 0, "cap_asymptote")));
}

TEST_CASE("fig-zf-dist: histogram integrates to one and CDF is monotone")
{
    const std::string text = run_fig_zf_dist(config("fig-zf-dist"));
    const auto csv = parse_csv(text);
    CHECK(join(csv.header) == "bin_center,pdf_emp,pdf_analytic,cdf_emp,cdf_analytic");
    REQUIRE(csv.rows.size() == 102);
    REQUIRE(join(csv.rows[100]) == "ks_d,n");
    const double ks = std::stod(csv.rows[101][0]);
    CHECK(ks <= 0.01);
    CHECK(csv.rows[101][1] == "100000");

    const double width = col(csv, 1, "bin_center") - col(csv, 0, "bin_center");
    double mass = 0.0;
    for (std::size_t r = 0; r < 100; ++r)
    {
        mass += col(csv, r, "pdf_emp") * width;
        if (r > 0)
        {
            CHECK(col(csv, r, "cdf_emp") >= col(csv, r - 1, "cdf_emp"));
            CHECK(col(csv, r, "cdf_analytic") >= col(csv, r - 1, "cdf_analytic"));
        }
    }
    CHECK(std::abs(mass - 1.0) < 1e-9);
}

TEST_CASE("fig-sumrate: schema and vary column")
{
    const auto csv = parse_csv(run_fig_sumrate(config("fig-sumrate", {{"vary", "m"}, {"trials", "500"}})));
    CHECK(join(csv.header) == "vary_value,snr_db,m,k,rate_mc,rate_stderr,rate_approx_eq44,rate_exact");
    REQUIRE(csv.rows.size() == 24);
    for (std::size_t r = 0; r < csv.rows.size(); ++r)
    {
        CHECK(col(csv, r, "vary_value") == col(csv, r, "m"));
        CHECK(col(csv, r, "rate_approx_eq44") >= col(csv, r, "rate_exact"));
    }
}

TEST_CASE("physical-omega table")
{
    const auto cfg = config("physical-omega", {{"d", "0,0.01,0.05,0.2"}});
    const auto csv = parse_csv(run_physical_omega(cfg));
    CHECK(join(csv.header) ==
          "d_m,freq_ghz,z_sur_re,z_sur_im,alpha,beta,k0,hsw_re,hsw_im,hsw_abs,omega_sw,beta_dl,omega_eq,sigma_eff2");
    REQUIRE(csv.rows.size() == 4);
    CHECK(col(csv, 0, "alpha") == doctest::Approx(44.192563371916601936).epsilon(1e-10));
    const double alpha = col(csv, 0, "alpha");
    for (std::size_t r = 1; r < 4; ++r)
    {
        const double d = col(csv, r, "d_m");
        CHECK(col(csv, r, "omega_sw") / col(csv, 0, "omega_sw") == doctest::Approx(std::exp(-2.0 * alpha * d)).epsilon(1e-9));
        CHECK(col(csv, r, "omega_eq") == doctest::Approx(col(csv, r, "omega_sw") + col(csv, r, "beta_dl")).epsilon(1e-11));
    }

    const auto lossless = parse_csv(run_physical_omega(config("physical-omega", {{"z_sur_re", "0"}, {"z_sur_im", "0"}})));
    CHECK(col(lossless, 0, "alpha") == 0.0);
    CHECK(col(lossless, 0, "beta") == col(lossless, 0, "k0"));
}

TEST_CASE("reruns are byte-identical and ignore worker count")
{
    auto cfg = config("fig-outage", {{"trials", "3000"}, {"snr_db", "0,10"}});
    cfg.workers = 1;
    const std::string a = run_fig_outage(cfg);
    cfg.workers = 3;
    CHECK(run_fig_outage(cfg) == a);
    cfg.seed = 2;
    CHECK(run_fig_outage(config("fig-outage", {{"trials", "3000"}, {"snr_db", "0,10"}, {"seed", "2"}})) != a);
}

TEST_CASE("validate: report contract and mutation")
{
    const KeyValues small{{"trials", "20000"}, {"snr_db", "0,10"}, {"omega_sw", "0,5"}};
    const auto report = run_validate(config("validate", small));
    CHECK(report.text.find("# seed = 1") != std::string::npos);
    CHECK(report.text.find("# snr_db = 0,10") != std::string::npos);
    CHECK(report.json.find("\"margin\"") != std::string::npos);
    bool lemma_ok = false;
    for (const auto &c : report.checks)
    {
        CHECK(c.margin == doctest::Approx(c.threshold - c.value));
        if (c.name == "lemma1_normalization")
            lemma_ok = c.passed;
    }
    CHECK(lemma_ok);

    KeyValues mutated = small;
    mutated["normalization"] = "paper";
    const auto bad = run_validate(config("validate", mutated));
    for (const auto &c : bad.checks)
        if (c.name == "lemma1_normalization")
            CHECK_FALSE(c.passed);
    CHECK_FALSE(bad.passed);
}

TEST_CASE("command-line exit codes and output files")
{
    const auto dir = std::filesystem::temp_directory_path() / "efas_cli_test";
    std::filesystem::create_directories(dir);
    const auto out = (dir / "pout.csv").string();

    CHECK(run_cli("--trials 2000 --set snr_db=0,10 --out " + out + " fig-outage") == 0);
    const std::string first = slurp(out);
    CHECK(first.find("snr_db,omega_sw,omega_eq") != std::string::npos);
    CHECK(run_cli("fig-outage --trials 2000 --set snr_db=0,10 --workers 2 --out " + out) == 0);
    CHECK(slurp(out) == first);

    const auto cfg_path = (dir / "run.cfg").string();
    std::ofstream(cfg_path) << "# sweep\ntrials = 2000\nsnr_db = 0,10\nseed = 1\n";
    CHECK(run_cli("--config " + cfg_path + " --out " + out + " fig-outage") == 0);
    CHECK(slurp(out) == first);

    CHECK(run_cli("--set bogus=1 fig-outage") == 1);
    CHECK(run_cli("fig-sumrate --vary m --set m=2") == 1);
    CHECK(run_cli("no-such-command") == 1);
    CHECK(run_cli("--trials 3000 --set normalization=paper --out " + (dir / "v.txt").string() + " validate") == 3);
    CHECK(std::filesystem::exists(dir / "v.txt.json"));
    // non-positive target rate
    CHECK(run_cli("--set r0=0 fig-outage") == 1);
}
