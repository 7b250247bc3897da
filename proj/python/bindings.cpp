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

#include "efas/analytic.hpp"
#include "efas/monte_carlo.hpp"
#include "efas/rng.hpp"
#include "efas/runner.hpp"
#include "efas/special_functions.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace
{

efas::McOptions options(std::uint64_t seed, std::size_t trials, unsigned workers)
{
    efas::McOptions opts;
    opts.seed = seed;
    opts.trials = trials;
    opts.workers = workers;
    return opts;
}

py::dict estimate_dict(const efas::MonteCarloEstimate &e)
{
    py::dict d;
    d["mean"] = e.mean;
    d["std_err"] = e.std_err;
    d["n"] = e.n;
    d["ci_low"] = e.ci_low;
    d["ci_high"] = e.ci_high;
    return d;
}

efas::Scenario zf_scenario(int m, int k, double snr_db, double omega_sw, double beta_dl)
{
    auto scn = efas::override_scenario(m, k, snr_db, omega_sw, beta_dl);
    scn.precoding = efas::Precoding::kZf;
    return scn;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "efas-sim core: closed forms, special functions and Monte-Carlo engine";
    m.attr("__version__") = efas::kToolVersion;

    py::register_exception<efas::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<efas::InfeasibleError>(m, "InfeasibleError", PyExc_ValueError);
    py::register_exception<efas::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<efas::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<efas::SingularChannelError>(m, "SingularChannelError", PyExc_ArithmeticError);

    // Special functions.
    m.def("exp_integral_e1", &efas::exp_integral_e1, py::arg("x"));
    m.def("regularized_lower_gamma", &efas::regularized_lower_gamma, py::arg("a"), py::arg("x"));

    // Surface physics.
    m.def(
        "propagation_constant",
        [](std::complex<double> z_sur, double freq_hz) {
            return efas::propagation_constant({z_sur, 2.0 * std::numbers::pi * freq_hz});
        },
        py::arg("z_sur"), py::arg("freq_hz"));
    m.def("omega_eq", &efas::omega_eq, py::arg("omega_sw"), py::arg("beta_dl"));

    // Closed forms.
    m.def(
        "outage_probability",
        [](double rho, double omega_eq, double r0) {
            return efas::outage_probability(efas::LinkBudget::make(rho, omega_eq, r0));
        },
        py::arg("rho"), py::arg("omega_eq"), py::arg("r0") = 1.0);
    m.def("ergodic_capacity", &efas::ergodic_capacity, py::arg("rho"), py::arg("omega_eq"));
    m.def("ergodic_capacity_high_snr", &efas::ergodic_capacity_high_snr, py::arg("rho"), py::arg("omega_eq"));
    m.def(
        "zf_sinr_params",
        [](int m_antennas, int k_users, double rho, double omega_eq) {
            const auto gp = efas::zf_sinr_params(m_antennas, k_users, rho, omega_eq);
            return py::make_tuple(gp.shape, gp.scale);
        },
        py::arg("m"), py::arg("k"), py::arg("rho"), py::arg("omega_eq"));
    m.def(
        "zf_sum_rate",
        [](int m_antennas, int k_users, double rho, double omega_eq) {
            const auto gp = efas::zf_sinr_params(m_antennas, k_users, rho, omega_eq);
            return py::make_tuple(efas::zf_sum_rate_approx(gp, k_users), efas::zf_sum_rate_exact(gp, k_users));
        },
        py::arg("m"), py::arg("k"), py::arg("rho"), py::arg("omega_eq"),
        "(approximation, exact) ZF sum rate in bps/Hz");

    // Monte Carlo.
    m.def(
        "simulate_outage",
        [](double snr_db, double omega_sw, double beta_dl, double r0, std::uint64_t seed, std::size_t trials,
           unsigned workers) {
            efas::MonteCarloEstimate e;
            {
                py::gil_scoped_release release;
                e = efas::simulate_outage(efas::override_scenario(1, 1, snr_db, omega_sw, beta_dl), r0,
                                          options(seed, trials, workers));
            }
            return estimate_dict(e);
        },
        py::arg("snr_db"), py::arg("omega_sw"), py::arg("beta_dl") = 0.01, py::arg("r0") = 1.0, py::arg("seed") = 1,
        py::arg("trials") = 100000, py::arg("workers") = 0);
    m.def(
        "simulate_capacity",
        [](double snr_db, double omega_sw, double beta_dl, std::uint64_t seed, std::size_t trials, unsigned workers) {
            efas::MonteCarloEstimate e;
            {
                py::gil_scoped_release release;
                e = efas::simulate_capacity(efas::override_scenario(1, 1, snr_db, omega_sw, beta_dl),
                                            options(seed, trials, workers));
            }
            return estimate_dict(e);
        },
        py::arg("snr_db"), py::arg("omega_sw"), py::arg("beta_dl") = 0.01, py::arg("seed") = 1,
        py::arg("trials") = 100000, py::arg("workers") = 0);
    m.def(
        "sample_zf_sinr",
        [](int m_antennas, int k_users, double snr_db, double omega_sw, double beta_dl, std::uint64_t seed,
           std::size_t trials, unsigned workers) {
            const auto scn = zf_scenario(m_antennas, k_users, snr_db, omega_sw, beta_dl);
            efas::SinrSampleSet set;
            {
                py::gil_scoped_release release;
                set = efas::sample_zf_sinr(scn, scn.omega_eq(), options(seed, trials, workers));
            }
            return py::array_t<double>(static_cast<py::ssize_t>(set.samples.size()), set.samples.data());
        },
        py::arg("m"), py::arg("k"), py::arg("snr_db"), py::arg("omega_sw"), py::arg("beta_dl") = 0.01,
        py::arg("seed") = 1, py::arg("trials") = 100000, py::arg("workers") = 0);
    m.def(
        "zf_precoder",
        [](const efas::CMatrix &h, double condition_cap) { return efas::zf_precoder(h, condition_cap); },
        py::arg("h_eq"), py::arg("condition_cap") = efas::kDefaultConditionCap);
    m.def(
        "ks_statistic_gamma",
        [](std::vector<double> samples, int shape, double scale) {
            const efas::GammaParams gp{shape, scale};
            return efas::ks_statistic(samples, [&](double x) { return efas::gamma_cdf(x, gp); });
        },
        py::arg("samples"), py::arg("shape"), py::arg("scale"));

    // RNG.
    m.def("philox4x32_10", &efas::philox4x32_10, py::arg("counter"), py::arg("key"));
    m.def("derive_seed", &efas::derive_seed, py::arg("master_seed"), py::arg("index"));

    // Runner: same artifacts as the command-line tool.
    m.def(
        "run",
        [](const std::string &command, const std::map<std::string, std::string> &overrides, unsigned workers) {
            auto cfg = efas::resolve_config(command, {}, overrides);
            cfg.workers = workers;
            py::gil_scoped_release release;
            return efas::run_command(cfg);
        },
        py::arg("command"), py::arg("overrides") = std::map<std::string, std::string>{}, py::arg("workers") = 0,
        "Run a subcommand and return its CSV or report text");
}
