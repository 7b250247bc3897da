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

#include "efas/special_functions.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace efas
{

namespace
{
constexpr double kAsymptoteSwitch = 1e-15;
constexpr double kSumRateTolerance = 1e-6;

void check_positive(double rho, double omega_eq)
{
    require(rho > 0.0 && omega_eq > 0.0, "rho and Omega_eq must be positive");
}

void check_gamma(const GammaParams &gp)
{
    require(gp.shape >= 1 && gp.scale > 0.0, "gamma law needs shape >= 1 and scale > 0");
}
} // namespace

LinkBudget LinkBudget::make(double rho, double omega_eq, double r0)
{
    require(rho > 0.0 && omega_eq > 0.0 && r0 > 0.0, "link budget entries must be positive");
    return LinkBudget{rho, omega_eq, r0, std::exp2(r0) - 1.0};
}

double outage_probability(const LinkBudget &lb)
{
    check_positive(lb.rho, lb.omega_eq);
    return -std::expm1(-lb.gamma0 / (lb.rho * lb.omega_eq));
}

double ergodic_capacity(double rho, double omega_eq)
{
    check_positive(rho, omega_eq);
    const double x = 1.0 / (rho * omega_eq);
    if (x < kAsymptoteSwitch)
    {
        const double head = -kEulerGamma - std::log(x);
        return (head + x * (1.0 + head)) / std::numbers::ln2;
    }
    return exp_scaled_e1(x) / std::numbers::ln2;
}

double ergodic_capacity_high_snr(double rho, double omega_eq)
{
    check_positive(rho, omega_eq);
    return std::log2(rho * omega_eq) - kEulerGamma / std::numbers::ln2;
}

GammaParams zf_sinr_params(int m_antennas, int k_users, double rho, double omega_eq)
{
    require(m_antennas >= 1 && k_users >= 1, "array sizes must be positive");
    if (k_users > m_antennas)
        throw InfeasibleError("zero-forcing needs K <= M (K=" + std::to_string(k_users) +
                              ", M=" + std::to_string(m_antennas) + ")");
    check_positive(rho, omega_eq);
    return GammaParams{m_antennas - k_users + 1, rho / k_users * omega_eq};
}

GammaParams zf_sinr_params(const Scenario &scn, double omega_eq)
{
    return zf_sinr_params(scn.m_antennas, scn.k_users, scn.rho(), omega_eq);
}

double gamma_pdf(double x, const GammaParams &gp)
{
    check_gamma(gp);
    if (x < 0.0)
        return 0.0;
    if (x == 0.0)
        return gp.shape == 1 ? 1.0 / gp.scale : 0.0;
    const double m = gp.shape;
    return std::exp((m - 1.0) * std::log(x) - x / gp.scale - ln_gamma(m) - m * std::log(gp.scale));
}

double gamma_cdf(double x, const GammaParams &gp)
{
    check_gamma(gp);
    if (x <= 0.0)
        return 0.0;
    return regularized_lower_gamma(gp.shape, x / gp.scale);
}

double zf_sum_rate_approx(const GammaParams &gp, int k_users)
{
    check_gamma(gp);
    return k_users * std::log2(1.0 + gp.mean());
}

double zf_sum_rate_approx(const Scenario &scn, double omega_eq)
{
    return zf_sum_rate_approx(zf_sinr_params(scn, omega_eq), scn.k_users);
}

double zf_sum_rate_exact(const GammaParams &gp, int k_users)
{
    check_gamma(gp);
    // Integrate in t = x / theta against the unit-scale Gamma(m) density.
    const double m = gp.shape;
    const double log_norm = ln_gamma(m);
    auto integrand = [&](double t) {
        if (t <= 0.0)
            return 0.0;
        const double density = std::exp((m - 1.0) * std::log(t) - t - log_norm);
        return std::log1p(gp.scale * t) / std::numbers::ln2 * density;
    };

    // boost's tolerance is relative; the convergence gate below is absolute.
    const double tol = 1e-10;
    // Split at the mode region so the semi-infinite map sees only the tail.
    const double split = m + 10.0 * std::sqrt(m) + 10.0;
    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
    double err_head = 0.0;
    double err_tail = 0.0;
    const double head = Quadrature::integrate(integrand, 0.0, split, 15, tol, &err_head);
    const double tail =
        Quadrature::integrate(integrand, split, std::numeric_limits<double>::infinity(), 15, tol, &err_tail);
    // The semi-infinite map doubles the integral but not the reported error.
    const double error = k_users * (err_head + 2.0 * err_tail);
    const double value = k_users * (head + tail);

    if (!std::isfinite(value) || error > kSumRateTolerance)
        throw NumericalError("sum-rate quadrature did not converge (shape=" + std::to_string(gp.shape) +
                             ", scale=" + std::to_string(gp.scale) + ", error estimate=" + std::to_string(error) + ")");
    return value;
}

double zf_sum_rate_exact(const Scenario &scn, double omega_eq)
{
    return zf_sum_rate_exact(zf_sinr_params(scn, omega_eq), scn.k_users);
}

} // namespace efas
