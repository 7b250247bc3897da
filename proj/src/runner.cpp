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

#include "efas/runner.hpp"

#include "efas/analytic.hpp"
#include "efas/rng.hpp"
#include "efas/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>

namespace efas
{

namespace
{

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string num(double v, int digits = 12)
{
    if (std::isnan(v))
        return "nan";
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.*g", digits, v);
    return buffer;
}

double parse_double(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError("key '" + key + "': not a finite number: '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string &key, const std::string &text)
{
    const std::string t = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
        throw ConfigError("key '" + key + "': not an unsigned integer: '" + text + "'");
    return v;
}

int parse_int(const std::string &key, const std::string &text)
{
    const double v = parse_double(key, text);
    if (v != std::floor(v) || std::abs(v) > std::numeric_limits<int>::max())
        throw ConfigError("key '" + key + "': not an integer: '" + text + "'");
    return static_cast<int>(v);
}

// Header block shared by every artifact; sorted keys keep reruns byte-identical.
std::string metadata(const RunConfig &cfg)
{
    std::string out = "# ";
    out += kToolVersion;
    out += "\n# command: " + cfg.command + "\n";
    for (const auto &[key, value] : cfg.resolved)
        out += "# " + key + " = " + value + "\n";
    return out;
}

const std::vector<double> &nonempty(const std::vector<double> &v, const char *what)
{
    if (v.empty())
        throw ConfigError(std::string("grid '") + what + "' must not be empty");
    return v;
}

OmegaNormalization parse_normalization(const std::string &text)
{
    if (text == "paper")
        return OmegaNormalization::kPaper;
    if (text == "unnormalized")
        return OmegaNormalization::kUnnormalized;
    throw ConfigError("normalization must be 'paper' or 'unnormalized', got '" + text + "'");
}

const char *normalization_name(OmegaNormalization n)
{
    return n == OmegaNormalization::kPaper ? "paper" : "unnormalized";
}

SumRateVary parse_vary(const std::string &text)
{
    if (text == "snr")
        return SumRateVary::kSnr;
    if (text == "k")
        return SumRateVary::kK;
    if (text == "m")
        return SumRateVary::kM;
    throw ConfigError("vary must be one of snr, k, m; got '" + text + "'");
}

// Standard error used to judge an outage estimate: the larger of the sample
// value and the binomial value at the analytic probability, so that
// all-success or all-failure runs are not judged against zero width.
double outage_stderr(double mc_stderr, double p_analytic, std::size_t n)
{
    const double binomial = std::sqrt(p_analytic * (1.0 - p_analytic) / static_cast<double>(n));
    return std::max(mc_stderr, binomial);
}

double z_score(double diff, double se)
{
    if (se > 0.0)
        return std::abs(diff) / se;
    return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

Scenario layered_scenario(const RunConfig &cfg)
{
    Scenario scn = cfg.scenario;
    scn.validate();
    return scn;
}

} // namespace

McOptions RunConfig::mc_options() const
{
    McOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    opts.workers = workers;
    opts.confidence = confidence;
    return opts;
}

McOptions RunConfig::mc_options(std::size_t point_index) const
{
    McOptions opts = mc_options();
    opts.seed = derive_seed(seed, point_index);
    return opts;
}

KeyValues parse_config_text(std::string_view text)
{
    KeyValues out;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);)
    {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string body = trim(line);
        if (body.empty())
            continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(std::string_view(body).substr(0, eq));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
        out[std::move(key)] = std::move(value);
    }
    return out;
}

KeyValues read_config_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<double> parse_double_list(const std::string &text)
{
    const std::string t = trim(text);
    if (t.empty())
        return {};
    if (t.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(t);
        for (std::string part; std::getline(ss, part, ':');)
            parts.push_back(part);
        if (parts.size() != 3)
            throw ConfigError("range must be start:step:stop, got '" + text + "'");
        const double start = parse_double("range", parts[0]);
        const double step = parse_double("range", parts[1]);
        const double stop = parse_double("range", parts[2]);
        if (step == 0.0 || (stop - start) / step < 0.0)
            throw ConfigError("range step does not reach stop: '" + text + "'");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 1000000)
            throw ConfigError("range too long: '" + text + "'");
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i)
            out[i] = start + static_cast<double>(i) * step;
        return out;
    }
    std::vector<double> out;
    std::stringstream ss(t);
    for (std::string part; std::getline(ss, part, ',');)
        out.push_back(parse_double("list", part));
    return out;
}

std::vector<int> parse_int_list(const std::string &text)
{
    std::vector<int> out;
    for (double v : parse_double_list(text))
        out.push_back(parse_int("list", num(v, 17)));
    return out;
}

KeyValues default_keys(std::string_view command, std::string_view vary)
{
    KeyValues base{{"seed", "1"}, {"confidence", "0.95"}, {"beta_dl", "0.01"}};
    auto with = [&](KeyValues extra) {
        KeyValues out = base;
        for (auto &[k, v] : extra)
            out[k] = v;
        return out;
    };

    if (command == "fig-outage")
        return with({{"trials", "1000000"}, {"snr_db", "0:5:30"}, {"omega_sw", "0,1,5,10"}, {"r0", "1"}});
    if (command == "fig-capacity")
        return with({{"trials", "1000000"}, {"snr_db", "0:5:30"}, {"omega_sw", "0,1,5,10"}});
    if (command == "fig-zf-dist")
        return with({{"trials", "100000"}, {"snr_db", "10"}, {"omega_sw", "5"}, {"m", "16"}, {"k", "4"},
                     {"bins", "100"}});
    if (command == "fig-sumrate")
    {
        KeyValues out = with({{"trials", "100000"}, {"omega_sw", "5"}, {"vary", std::string(vary)}});
        if (vary == "snr")
            out.insert({{"snr_db", "0:5:30"}, {"m", "16"}, {"k", "4"}});
        else if (vary == "k")
            out.insert({{"snr_db", "0,5,10"}, {"m", "16"}, {"k", "1:1:16"}});
        else if (vary == "m")
            out.insert({{"snr_db", "5"}, {"m", "8,16,32"}, {"k", "1:1:8"}});
        else
            parse_vary(std::string(vary));
        return out;
    }
    if (command == "physical-omega")
        return with({{"freq_ghz", "30"}, {"z_sur_re", "100"}, {"z_sur_im", "100"}, {"d", "0,0.01,0.02,0.05,0.1"},
                     {"m", "16"}, {"n_s", "8"}, {"n_l", "8"}, {"beta_bs", "1"}, {"beta_lu", "1"},
                     {"sigma2", "1"}, {"sigma_r2", "0"}, {"alpha_r", "1"}, {"normalization", "unnormalized"}});
    if (command == "validate")
        return with({{"trials", "100000"}, {"snr_db", "0:5:30"}, {"omega_sw", "0,1,5,10"}, {"r0", "1"},
                     {"m", "16"}, {"k", "4"}, {"zf_snr_db", "10"}, {"zf_omega_sw", "5"},
                     {"sumrate_snr_db", "10,20"}, {"layered_m", "4"}, {"n_s", "8"},
                     {"normalization", normalization_name(kValidatedNormalization)}});
    throw ConfigError("unknown command '" + std::string(command) + "'");
}

RunConfig resolve_config(const std::string &command, const KeyValues &file, const KeyValues &overrides)
{
    std::string vary = "snr";
    if (auto it = file.find("vary"); it != file.end())
        vary = it->second;
    if (auto it = overrides.find("vary"); it != overrides.end())
        vary = it->second;

    KeyValues keys = default_keys(command, vary);
    for (const KeyValues *layer : {&file, &overrides})
        for (const auto &[k, v] : *layer)
        {
            if (!keys.contains(k))
                throw ConfigError("unknown key '" + k + "' for " + command);
            keys[k] = v;
        }

    RunConfig cfg;
    cfg.command = command;
    cfg.resolved = keys;
    auto get = [&](const char *k) -> const std::string & { return keys.at(k); };
    auto real = [&](const char *k) { return parse_double(k, get(k)); };
    auto integer = [&](const char *k) { return parse_int(k, get(k)); };

    cfg.seed = parse_u64("seed", get("seed"));
    cfg.confidence = real("confidence");
    if (!(cfg.confidence > 0.0 && cfg.confidence < 1.0))
        throw ConfigError("confidence must lie in (0, 1)");
    cfg.beta_dl = real("beta_dl");
    if (cfg.beta_dl < 0.0)
        throw ConfigError("beta_dl must be non-negative");

    if (keys.contains("trials"))
    {
        cfg.trials = parse_u64("trials", get("trials"));
        if (cfg.trials < 2)
            throw ConfigError("trials must be at least 2");
    }
    if (keys.contains("snr_db"))
        cfg.snr_grid_db = nonempty(parse_double_list(get("snr_db")), "snr_db");
    if (keys.contains("omega_sw"))
    {
        cfg.omega_sw_list = nonempty(parse_double_list(get("omega_sw")), "omega_sw");
        for (double o : cfg.omega_sw_list)
            if (o < 0.0)
                throw ConfigError("omega_sw values must be non-negative");
    }
    if (keys.contains("r0"))
    {
        cfg.r0 = real("r0");
        if (!(cfg.r0 > 0.0))
            throw ConfigError("r0 must be positive");
    }
    if (keys.contains("bins"))
    {
        cfg.bins = integer("bins");
        if (cfg.bins < 1)
            throw ConfigError("bins must be positive");
    }
    if (keys.contains("k"))
        cfg.k_grid = parse_int_list(get("k"));
    if (keys.contains("m"))
        cfg.m_grid = parse_int_list(get("m"));
    for (int v : cfg.k_grid)
        if (v < 1)
            throw ConfigError("k values must be positive");
    for (int v : cfg.m_grid)
        if (v < 1)
            throw ConfigError("m values must be positive");
    if (keys.contains("vary"))
        cfg.vary = parse_vary(get("vary"));

    if (command == "fig-zf-dist" && (cfg.m_grid.size() != 1 || cfg.k_grid.size() != 1 || cfg.snr_grid_db.size() != 1 ||
                                     cfg.omega_sw_list.size() != 1))
        throw ConfigError("fig-zf-dist takes a single m, k, snr_db and omega_sw");
    if (command == "fig-sumrate" && cfg.omega_sw_list.size() != 1)
        throw ConfigError("fig-sumrate takes a single omega_sw");
    if (command == "fig-zf-dist" || command == "fig-sumrate")
    {
        if (cfg.k_grid.empty() || cfg.m_grid.empty())
            throw ConfigError("k and m grids must not be empty");
        for (int m : cfg.m_grid)
            for (int k : cfg.k_grid)
                if (k > m)
                    throw InfeasibleError("grid point K=" + std::to_string(k) + " > M=" + std::to_string(m) +
                                          " is infeasible for zero-forcing");
    }

    if (command == "physical-omega")
    {
        cfg.freq_ghz = real("freq_ghz");
        if (!(cfg.freq_ghz > 0.0))
            throw ConfigError("freq_ghz must be positive");
        cfg.z_sur = {real("z_sur_re"), real("z_sur_im")};
        cfg.d_grid = nonempty(parse_double_list(get("d")), "d");
        for (double d : cfg.d_grid)
            if (d < 0.0)
                throw ConfigError("path lengths must be non-negative");
        Scenario &scn = cfg.scenario;
        scn.m_antennas = cfg.m_grid.at(0);
        scn.n_s = integer("n_s");
        scn.n_l = integer("n_l");
        if (scn.n_s < 1 || scn.n_l < 1)
            throw ConfigError("n_s and n_l must be positive");
        scn.beta_bs = real("beta_bs");
        scn.beta_lu = {real("beta_lu")};
        scn.beta_dl = {cfg.beta_dl};
        scn.sigma2 = real("sigma2");
        scn.sigma_r2 = real("sigma_r2");
        scn.normalization = parse_normalization(get("normalization"));
        RelaySpec relay;
        relay.alpha_r = real("alpha_r");
        relay.u = CMatrix::Identity(scn.n_l, scn.n_s);
        relay.kind = scn.n_l == scn.n_s ? RelayKind::kUnitary : RelayKind::kSelection;
        scn.surface = SurfaceConfig{SurfaceWaveParams{}, relay, CMatrix::Identity(scn.n_s, scn.n_s)};
        scn.validate();
    }
    if (command == "validate")
    {
        const int layered_m = integer("layered_m");
        const int n_s = integer("n_s");
        if (layered_m < 1 || n_s < 1)
            throw ConfigError("layered_m and n_s must be positive");
        cfg.scenario = identity_surface_scenario(layered_m, n_s, 1.0, 1.0, cfg.beta_dl);
        cfg.scenario.normalization = parse_normalization(get("normalization"));
        cfg.scenario.validate();
        parse_double("zf_snr_db", get("zf_snr_db"));
        if (real("zf_omega_sw") < 0.0)
            throw ConfigError("zf_omega_sw must be non-negative");
        nonempty(parse_double_list(get("sumrate_snr_db")), "sumrate_snr_db");
        if (cfg.k_grid.size() != 1 || cfg.m_grid.size() != 1 || cfg.k_grid[0] > cfg.m_grid[0])
            throw ConfigError("validate takes a single feasible m and k");
    }
    return cfg;
}

std::string run_fig_outage(const RunConfig &cfg)
{
    std::string out = metadata(cfg);
    out += "snr_db,omega_sw,omega_eq,pout_analytic,pout_mc,pout_stderr,trials\n";
    std::size_t point = 0;
    for (double omega : nonempty(cfg.omega_sw_list, "omega_sw"))
        for (double snr : nonempty(cfg.snr_grid_db, "snr_db"))
        {
            const Scenario scn = override_scenario(1, 1, snr, omega, cfg.beta_dl);
            const double analytic = outage_probability(LinkBudget::make(scn.rho(), scn.omega_eq(), cfg.r0));
            const auto mc = simulate_outage(scn, cfg.r0, cfg.mc_options(point++));
            out += num(snr) + "," + num(omega) + "," + num(scn.omega_eq()) + "," + num(analytic) + "," +
                   num(mc.mean) + "," + num(mc.std_err) + "," + std::to_string(mc.n) + "\n";
        }
    return out;
}

std::string run_fig_capacity(const RunConfig &cfg)
{
    std::string out = metadata(cfg);
    out += "snr_db,omega_sw,cap_analytic,cap_mc,cap_stderr,cap_asymptote\n";
    std::size_t point = 0;
    for (double omega : nonempty(cfg.omega_sw_list, "omega_sw"))
        for (double snr : nonempty(cfg.snr_grid_db, "snr_db"))
        {
            const Scenario scn = override_scenario(1, 1, snr, omega, cfg.beta_dl);
            const double rho = scn.rho();
            const double omega_eq = scn.omega_eq();
            const double analytic = ergodic_capacity(rho, omega_eq);
            const double asymptote =
                rho * omega_eq > 1.0 ? ergodic_capacity_high_snr(rho, omega_eq) : std::numeric_limits<double>::quiet_NaN();
            const auto mc = simulate_capacity(scn, cfg.mc_options(point++));
            out += num(snr) + "," + num(omega) + "," + num(analytic) + "," + num(mc.mean) + "," + num(mc.std_err) + "," +
                   num(asymptote) + "\n";
        }
    return out;
}

std::string run_fig_zf_dist(const RunConfig &cfg)
{
    const int m = cfg.m_grid.at(0);
    const int k = cfg.k_grid.at(0);
    const Scenario scn = override_scenario(m, k, cfg.snr_grid_db.at(0), cfg.omega_sw_list.at(0), cfg.beta_dl);
    const double omega_eq = scn.omega_eq();
    const GammaParams gp = zf_sinr_params(scn, omega_eq);

    const auto set = sample_zf_sinr(scn, omega_eq, cfg.mc_options());
    const auto hist = histogram_density(set.samples, cfg.bins);
    const Ecdf ecdf(set.samples);
    const double ks = ks_statistic(set.samples, [&](double x) { return gamma_cdf(x, gp); });

    std::string out = metadata(cfg);
    out += "bin_center,pdf_emp,pdf_analytic,cdf_emp,cdf_analytic\n";
    const auto centers = hist.bin_centers();
    for (std::size_t b = 0; b < centers.size(); ++b)
    {
        const double x = centers[b];
        out += num(x) + "," + num(hist.densities[b]) + "," + num(gamma_pdf(x, gp)) + "," + num(ecdf(x)) + "," +
               num(gamma_cdf(x, gp)) + "\n";
    }
    out += "ks_d,n\n";
    out += num(ks) + "," + std::to_string(set.samples.size()) + "\n";
    return out;
}

std::string run_fig_sumrate(const RunConfig &cfg)
{
    const double omega_sw = cfg.omega_sw_list.at(0);
    std::string out = metadata(cfg);
    out += "vary_value,snr_db,m,k,rate_mc,rate_stderr,rate_approx_eq44,rate_exact\n";
    std::size_t point = 0;
    for (double snr : nonempty(cfg.snr_grid_db, "snr_db"))
        for (int m : cfg.m_grid)
            for (int k : cfg.k_grid)
            {
                const Scenario scn = override_scenario(m, k, snr, omega_sw, cfg.beta_dl);
                Scenario zf = scn;
                zf.precoding = Precoding::kZf;
                const double omega_eq = zf.omega_eq();
                const auto mc = simulate_sum_rate(zf, omega_eq, cfg.mc_options(point++));
                const double vary_value = cfg.vary == SumRateVary::kSnr ? snr : cfg.vary == SumRateVary::kK ? k : m;
                out += num(vary_value) + "," + num(snr) + "," + std::to_string(m) + "," + std::to_string(k) + "," +
                       num(mc.mean) + "," + num(mc.std_err) + "," + num(zf_sum_rate_approx(zf, omega_eq)) + "," +
                       num(zf_sum_rate_exact(zf, omega_eq)) + "\n";
            }
    return out;
}

std::string run_physical_omega(const RunConfig &cfg)
{
    const Scenario &base = cfg.scenario;
    const double omega = 2.0 * std::numbers::pi * cfg.freq_ghz * 1e9;
    const cplx gamma = propagation_constant({cfg.z_sur, omega});
    const double k0 = free_space_wavenumber(omega);

    std::string out = metadata(cfg);
    out += "d_m,freq_ghz,z_sur_re,z_sur_im,alpha,beta,k0,hsw_re,hsw_im,hsw_abs,omega_sw,beta_dl,omega_eq,sigma_eff2\n";
    for (double d : cfg.d_grid)
    {
        Scenario scn = base;
        scn.surface->wave = SurfaceWaveParams{gamma, {1.0, 0.0}, d};
        const cplx hsw = surface_wave_envelope(scn.surface->wave);
        out += num(d) + "," + num(cfg.freq_ghz) + "," + num(cfg.z_sur.real()) + "," + num(cfg.z_sur.imag()) + "," +
               num(gamma.real()) + "," + num(gamma.imag()) + "," + num(k0) + "," + num(hsw.real()) + "," +
               num(hsw.imag()) + "," + num(std::abs(hsw)) + "," + num(scn.omega_sw()) + "," + num(scn.beta_dl[0]) +
               "," + num(scn.omega_eq()) + "," + num(scn.effective_noise()) + "\n";
    }
    return out;
}

ValidationReport run_validate(const RunConfig &cfg)
{
    const auto &keys = cfg.resolved;
    ValidationReport report;
    auto add = [&](std::string name, double value, double threshold, std::string detail) {
        ValidationCheck c;
        c.name = std::move(name);
        c.value = value;
        c.threshold = threshold;
        c.margin = threshold - value;
        c.passed = value <= threshold;
        c.detail = std::move(detail);
        report.checks.push_back(std::move(c));
        return std::prev(report.checks.end());
    };
    std::size_t stream = 0;
    auto next_options = [&] { return cfg.mc_options(stream++); };

    // Omega_sw normalization on the all-identity surface.
    const Scenario layered = layered_scenario(cfg);
    {
        const auto rec = lemma1_oracle(layered, next_options());
        const bool want_paper = layered.normalization == OmegaNormalization::kPaper;
        const double target = want_paper ? rec.paper_value : rec.unnormalized_value;
        const bool agrees = rec.verdict == (want_paper ? Lemma1Verdict::kPaper : Lemma1Verdict::kUnnormalized);
        const double z = z_score(rec.empirical.mean - target, rec.empirical.std_err);
        const auto check = add("lemma1_normalization", z, 3.0,
            std::string("verdict=") + to_string(rec.verdict) + " configured=" + normalization_name(layered.normalization) +
                " empirical=" + num(rec.empirical.mean, 8) + " paper=" + num(rec.paper_value, 8) +
                " unnormalized=" + num(rec.unnormalized_value, 8));
        check->passed = check->passed && agrees;
    }

    // Layered coefficient against CN(0, Omega_eq).
    {
        const double omega_eq = layered.omega_eq();
        const auto h = sample_layered_coefficients(layered, next_options());
        std::vector<double> re(h.size()), im(h.size()), pw(h.size());
        for (std::size_t i = 0; i < h.size(); ++i)
        {
            re[i] = h[i].real();
            im[i] = h[i].imag();
            pw[i] = std::norm(h[i]);
        }
        const double gate = ks_threshold(1.63, h.size());
        auto normal_cdf = [&](double x) { return 0.5 * std::erfc(-x / std::sqrt(omega_eq)); };
        auto exp_cdf = [&](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x / omega_eq); };
        add("layered_ks_real", ks_statistic(re, normal_cdf), gate, "CN(0, " + num(omega_eq, 8) + ") real part");
        add("layered_ks_imag", ks_statistic(im, normal_cdf), gate, "CN(0, " + num(omega_eq, 8) + ") imaginary part");
        add("layered_ks_power", ks_statistic(pw, exp_cdf), gate, "Exp(" + num(omega_eq, 8) + ") for |h|^2");
        const auto est = mean_confidence_interval(pw, cfg.confidence);
        add("layered_variance", z_score(est.mean - omega_eq, est.std_err), 3.0,
            "E|h|^2=" + num(est.mean, 8) + " omega_eq=" + num(omega_eq, 8));
    }

    // Closed-form outage and capacity grids.
    {
        double worst_outage = 0.0;
        double worst_capacity = 0.0;
        for (double omega : nonempty(cfg.omega_sw_list, "omega_sw"))
            for (double snr : nonempty(cfg.snr_grid_db, "snr_db"))
            {
                const Scenario scn = override_scenario(1, 1, snr, omega, cfg.beta_dl);
                const double pout = outage_probability(LinkBudget::make(scn.rho(), scn.omega_eq(), cfg.r0));
                const auto mc_out = simulate_outage(scn, cfg.r0, next_options());
                worst_outage = std::max(worst_outage, z_score(mc_out.mean - pout, outage_stderr(mc_out.std_err, pout, mc_out.n)));
                const auto mc_cap = simulate_capacity(scn, next_options());
                worst_capacity = std::max(
                    worst_capacity, z_score(mc_cap.mean - ergodic_capacity(scn.rho(), scn.omega_eq()), mc_cap.std_err));
            }
        add("outage_grid", worst_outage, 3.0, "max |mc - analytic| in std-errors");
        add("capacity_grid", worst_capacity, 3.0, "max |mc - analytic| in std-errors");
    }

    // ZF SINR law, sum rate and nulling.
    {
        const int m = cfg.m_grid.at(0);
        const int k = cfg.k_grid.at(0);
        Scenario scn = override_scenario(m, k, parse_double("zf_snr_db", keys.at("zf_snr_db")),
                                         parse_double("zf_omega_sw", keys.at("zf_omega_sw")), cfg.beta_dl);
        scn.precoding = Precoding::kZf;
        const double omega_eq = scn.omega_eq();
        const GammaParams gp = zf_sinr_params(scn, omega_eq);
        const auto set = sample_zf_sinr(scn, omega_eq, next_options());
        add("zf_ks", ks_statistic(set.samples, [&](double x) { return gamma_cdf(x, gp); }),
            ks_threshold(1.5 * 1.36, set.samples.size()),
            "Gamma(" + std::to_string(gp.shape) + ", " + num(gp.scale, 8) + ")");
        const auto est = mean_confidence_interval(set.samples, cfg.confidence);
        add("zf_mean", z_score(est.mean - gp.mean(), est.std_err), 3.0,
            "mean=" + num(est.mean, 8) + " expected=" + num(gp.mean(), 8));

        const auto residual = interference_residual_samples(scn, omega_eq, next_options());
        double worst = 0.0;
        for (double r : residual)
            if (!std::isnan(r))
                worst = std::max(worst, r);
        add("zf_interference", worst, 1e-10, "max normalized leakage");

        double worst_rate = 0.0;
        double jensen = -std::numeric_limits<double>::infinity();
        for (double snr : parse_double_list(keys.at("sumrate_snr_db")))
        {
            Scenario point = scn;
            point.p_total = db_to_linear(snr) * point.sigma2;
            const auto mc = simulate_sum_rate(point, omega_eq, next_options());
            const double exact = zf_sum_rate_exact(point, omega_eq);
            worst_rate = std::max(worst_rate, z_score(mc.mean - exact, mc.std_err));
            jensen = std::max(jensen, exact - zf_sum_rate_approx(point, omega_eq));
        }
        add("sumrate_exact", worst_rate, 3.0, "max |mc - exact| in std-errors");
        add("sumrate_jensen", jensen, 0.0, "max (exact - approximation)");
    }

    report.passed = std::all_of(report.checks.begin(), report.checks.end(), [](const auto &c) { return c.passed; });

    std::string text = metadata(cfg);
    nlohmann::ordered_json json;
    json["version"] = kToolVersion;
    json["command"] = cfg.command;
    json["seed"] = cfg.seed;
    json["config"] = cfg.resolved;
    json["checks"] = nlohmann::ordered_json::array();
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %-6s %14s %14s %14s  %s\n", "check", "status", "value", "threshold", "margin",
                  "detail");
    text += line;
    for (const auto &c : report.checks)
    {
        std::snprintf(line, sizeof line, "%-22s %-6s %14.6g %14.6g %14.6g  ", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                      c.value, c.threshold, c.margin);
        text += line + c.detail + "\n";
        json["checks"].push_back({{"name", c.name},
                                  {"passed", c.passed},
                                  {"value", c.value},
                                  {"threshold", c.threshold},
                                  {"margin", c.margin},
                                  {"detail", c.detail}});
    }
    text += std::string("overall: ") + (report.passed ? "PASS" : "FAIL") + "\n";
    json["passed"] = report.passed;
    report.text = std::move(text);
    report.json = json.dump(2) + "\n";
    return report;
}

std::string run_command(const RunConfig &cfg, bool *validation_passed)
{
    if (cfg.command == "fig-outage")
        return run_fig_outage(cfg);
    if (cfg.command == "fig-capacity")
        return run_fig_capacity(cfg);
    if (cfg.command == "fig-zf-dist")
        return run_fig_zf_dist(cfg);
    if (cfg.command == "fig-sumrate")
        return run_fig_sumrate(cfg);
    if (cfg.command == "physical-omega")
        return run_physical_omega(cfg);
    if (cfg.command == "validate")
    {
        auto report = run_validate(cfg);
        if (validation_passed)
            *validation_passed = report.passed;
        return report.text;
    }
    throw ConfigError("unknown command '" + cfg.command + "'");
}

} // namespace efas
