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

#include "efas/analytic.hpp"
#include "efas/special_functions.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <numbers>

using namespace efas;

namespace
{
double outage(double rho, double omega, double r0) { return outage_probability(LinkBudget::make(rho, omega, r0)); }

// Independent oracle: E{log2(1 + s X)}, X ~ Exp(1), by exp-sinh quadrature.
double capacity_quadrature(double s)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([s](double x) { return std::log1p(s * x) * std::exp(-x); }, 1e-14) /
           std::numbers::ln2;
}
} // namespace

TEST_CASE("link budget")
{
    const auto lb = LinkBudget::make(10.0, 1.01, 1.0);
    CHECK(lb.gamma0 == 1.0);
    CHECK(LinkBudget::make(1.0, 1.0, 2.5).gamma0 == doctest::Approx(std::exp2(2.5) - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(LinkBudget::make(1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("outage closed form")
{
    CHECK(outage(10.0, 1.01, 1.0) == doctest::Approx(0.094266259681641242006).epsilon(1e-13));
    CHECK(std::abs(outage(10.0, 1.01, 1.0) - 0.094267) < 1e-6);
    CHECK(outage(10.0, 0.01, 1.0) == doctest::Approx(0.99995460007023751515).epsilon(1e-14));
    CHECK(outage(1e300, 1.0, 1.0) <= 1e-299);
    CHECK(outage(1e-300, 1.0, 1.0) == 1.0);
}

TEST_CASE("outage monotonicity and scale law")
{
    for (double rho = 0.1; rho < 1e4; rho *= 1.7)
        for (double om = 0.01; om < 20.0; om *= 2.3)
        {
            CHECK(outage(rho * 1.1, om, 1.0) <= outage(rho, om, 1.0));
            CHECK(outage(rho, om * 1.1, 1.0) <= outage(rho, om, 1.0));
            CHECK(outage(rho, om, 1.2) >= outage(rho, om, 1.0));
            for (double c : {0.013, 0.7, 3.3, 91.0})
                CHECK(outage(c * rho, om / c, 1.0) == doctest::Approx(outage(rho, om, 1.0)).epsilon(1e-12));
        }
}

TEST_CASE("ergodic capacity values")
{
    CHECK(ergodic_capacity(10.0, 5.01) == doctest::Approx(4.9402764833355239948).epsilon(1e-12));
    CHECK(std::abs(ergodic_capacity(10.0, 5.01) - 4.9405) < 0.01);
    CHECK(ergodic_capacity(10.0, 0.01) == doctest::Approx(0.1320979678021923777).epsilon(1e-12));
    CHECK(ergodic_capacity(1.0, 1e4) == doctest::Approx(12.456356041494458929).epsilon(1e-12));
    CHECK(ergodic_capacity(1e-12, 1.0) < 1e-11);
    for (double s : {1e-3, 0.1, 1.0, 7.0, 50.0, 1e3, 1e6})
        CHECK(ergodic_capacity(s, 1.0) == doctest::Approx(capacity_quadrature(s)).epsilon(1e-10));
}

TEST_CASE("ergodic capacity is increasing and obeys the scale law")
{
    double prev = 0.0;
    for (double s = 1e-4; s < 1e12; s *= 1.5)
    {
        const double c = ergodic_capacity(s, 1.0);
        CHECK(c > prev);
        prev = c;
        CHECK(ergodic_capacity(s * 4.0, 0.25) == doctest::Approx(c).epsilon(1e-12));
    }
    // beyond the asymptote switch the result stays continuous
    CHECK(ergodic_capacity(1e16, 1.0) == doctest::Approx(ergodic_capacity(1e14, 1.0) + std::log2(100.0)).epsilon(1e-12));
}

TEST_CASE("high-SNR asymptote")
{
    CHECK(ergodic_capacity_high_snr(50.1, 1.0) == doctest::Approx(4.8139925210309789074).epsilon(1e-13));
    CHECK(std::abs(ergodic_capacity_high_snr(50.1, 1.0) - 4.8141) < 2e-4);
    CHECK(ergodic_capacity_high_snr(2.0 * 77.0, 1.0) - ergodic_capacity_high_snr(77.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    // true gaps from the mpmath oracle; the asymptote undershoots from below
    CHECK(ergodic_capacity(1.0, 1e4) - ergodic_capacity_high_snr(1.0, 1e4) == doctest::Approx(0.0013898).epsilon(1e-3));
    CHECK(ergodic_capacity(1.0, 1e3) - ergodic_capacity_high_snr(1.0, 1e3) == doctest::Approx(0.0105814).epsilon(1e-3));
    CHECK(ergodic_capacity(1.0, 2e3) - ergodic_capacity_high_snr(1.0, 2e3) < 0.01);
}

TEST_CASE("high-SNR slope tends to one")
{
    for (double s : {1e3, 1e4, 1e5})
    {
        const double slope = ergodic_capacity(2.0 * s, 1.0) - ergodic_capacity(s, 1.0);
        CHECK(std::abs(slope - 1.0) < 0.01);
    }
}

TEST_CASE("ZF SINR law parameters")
{
    const auto gp = zf_sinr_params(16, 4, 10.0, 5.01);
    CHECK(gp.shape == 13);
    CHECK(gp.scale == doctest::Approx(12.525).epsilon(1e-15));
    CHECK(gp.mean() == doctest::Approx(162.825).epsilon(1e-15));
    CHECK(zf_sinr_params(6, 6, 1.0, 1.0).shape == 1);
    CHECK_THROWS_AS(zf_sinr_params(4, 5, 1.0, 1.0), InfeasibleError);

    Scenario scn = override_scenario(16, 4, 10.0, 5.0, 0.01);
    const auto from_scn = zf_sinr_params(scn, scn.omega_eq());
    CHECK(from_scn.shape == 13);
    CHECK(from_scn.scale == doctest::Approx(12.525).epsilon(1e-14));
}

TEST_CASE("gamma density and CDF")
{
    const GammaParams expo{1, 2.5};
    for (double x : {0.0, 0.3, 4.0})
        CHECK(gamma_pdf(x, expo) == doctest::Approx(std::exp(-x / 2.5) / 2.5).epsilon(1e-14));

    const GammaParams gp{13, 12.525};
    const double mode = 12.0 * 12.525;
    const double h = 1e-3;
    const double slope = (gamma_pdf(mode + h, gp) - gamma_pdf(mode - h, gp)) / (2.0 * h);
    CHECK(std::abs(slope) < 1e-6);
    CHECK(gamma_cdf(gp.mean(), gp) == doctest::Approx(0.53689525290031874373).epsilon(1e-12));

    // Riemann check of normalization on a fine grid
    double mass = 0.0;
    const double dx = 0.01;
    for (double x = dx / 2; x < 2000.0; x += dx)
        mass += gamma_pdf(x, gp) * dx;
    CHECK(std::abs(mass - 1.0) < 1e-8);

    for (double x = 20.0; x < 600.0; x += 7.0)
    {
        const double d = (gamma_cdf(x + 1e-3, gp) - gamma_cdf(x - 1e-3, gp)) / 2e-3;
        CHECK(d == doctest::Approx(gamma_pdf(x, gp)).epsilon(1e-4));
    }
}

TEST_CASE("sum-rate approximation and exact value")
{
    Scenario scn = override_scenario(16, 4, 10.0, 5.0, 0.01);
    const double om = scn.omega_eq();
    CHECK(zf_sum_rate_approx(scn, om) == doctest::Approx(29.424046886011114151).epsilon(1e-13));
    CHECK(zf_sum_rate_exact(scn, om) == doctest::Approx(29.202173183860876662).epsilon(1e-9));
    CHECK(std::abs(zf_sum_rate_exact(scn, om) - 29.202173183860876662) < 1e-6);

    // K = 1 reduces to log2(1 + M rho Omega)
    CHECK(zf_sum_rate_approx(GammaParams{8, 3.0}, 1) == doctest::Approx(std::log2(1.0 + 24.0)).epsilon(1e-15));
    CHECK(zf_sum_rate_approx(GammaParams{8, 1e-300}, 3) < 1e-290);

    // m = 1 reduces to the single-user capacity integral, times K
    for (double theta : {0.05, 1.0, 30.0, 5000.0})
        CHECK(zf_sum_rate_exact(GammaParams{1, theta}, 3) ==
              doctest::Approx(3.0 * ergodic_capacity(theta, 1.0)).epsilon(1e-10));
    CHECK(zf_sum_rate_exact(GammaParams{4, 1e-9}, 2) < 1e-7);
}

TEST_CASE("Jensen: the approximation bounds the exact sum rate")
{
    for (int m = 1; m <= 64; m = m * 2 + 1)
        for (double theta = 1e-3; theta < 1e5; theta *= 4.7)
        {
            const GammaParams gp{m, theta};
            const double exact = zf_sum_rate_exact(gp, 3);
            CAPTURE(m);
            CAPTURE(theta);
            CHECK(exact >= 0.0);
            CHECK(zf_sum_rate_approx(gp, 3) >= exact);
        }
}
