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

#ifndef EFAS_ANALYTIC_HPP
#define EFAS_ANALYTIC_HPP

#include "efas/stochastic_channel.hpp"

namespace efas
{

// Law of the post-ZF SINR: Gamma(shape = M - K + 1, scale = P Omega_eq / (K sigma_eff^2)).
struct GammaParams
{
    int shape = 1;
    double scale = 1.0;

    double mean() const { return shape * scale; }
    double variance() const { return shape * scale * scale; }
};

struct LinkBudget
{
    double rho = 1.0;      // P / sigma_eff^2, linear
    double omega_eq = 1.0;
    double r0 = 1.0;       // target rate, bps/Hz
    double gamma0 = 1.0;   // 2^r0 - 1

    static LinkBudget make(double rho, double omega_eq, double r0);
};

double outage_probability(const LinkBudget &lb);

/// (1/ln 2) e^{1/(rho Omega)} E1(1/(rho Omega)).
///
/// Below 1/(rho Omega) = 1e-15 the three-term expansion
/// -gamma_E - ln x + x (1 - gamma_E - ln x) replaces the series; its error
/// there is below 1e-28.
double ergodic_capacity(double rho, double omega_eq);

// log2(rho Omega) - gamma_E / ln 2, valid for rho Omega > 1.
double ergodic_capacity_high_snr(double rho, double omega_eq);

GammaParams zf_sinr_params(const Scenario &scn, double omega_eq);
GammaParams zf_sinr_params(int m_antennas, int k_users, double rho, double omega_eq);

double gamma_pdf(double x, const GammaParams &gp);
double gamma_cdf(double x, const GammaParams &gp);

// K log2(1 + m theta): Jensen upper bound on the exact sum-rate.
double zf_sum_rate_approx(const Scenario &scn, double omega_eq);
double zf_sum_rate_approx(const GammaParams &gp, int k_users);

// K E{log2(1 + X)}, X ~ Gamma(m, theta), adaptive Gauss-Kronrod to 1e-6 bps/Hz.
double zf_sum_rate_exact(const Scenario &scn, double omega_eq);
double zf_sum_rate_exact(const GammaParams &gp, int k_users);

} // namespace efas

#endif
