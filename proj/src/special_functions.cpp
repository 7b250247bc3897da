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

#include "efas/special_functions.hpp"

#include "efas/common.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>

#include <cmath>
#include <limits>

namespace efas
{

namespace
{
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

// sum_{k>=1} (-x)^k / (k k!)
double e1_series_tail(double x)
{
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < kMaxIterations; ++k)
    {
        term *= -x / k;
        const double delta = term / k;
        sum += delta;
        if (std::abs(delta) < std::abs(sum) * kEps)
            return sum;
    }
    throw NumericalError("E1 series did not converge");
}

// e^x E1(x) for x > 1, modified Lentz.
double e1_scaled_fraction(double x)
{
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i)
    {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps)
            return h;
    }
    throw NumericalError("E1 continued fraction did not converge");
}

// P(a, x) by series, valid and fast for x < a + 1.
double lower_gamma_series(double a, double x)
{
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < kMaxIterations; ++n)
    {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps)
            return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
    }
    throw NumericalError("incomplete gamma series did not converge");
}

// Q(a, x) by continued fraction, for x >= a + 1.
double upper_gamma_fraction(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i)
    {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps)
            return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
    }
    throw NumericalError("incomplete gamma continued fraction did not converge");
}

void check_gamma_domain(double shape, double x)
{
    require(shape > 0.0 && std::isfinite(shape), "gamma shape must be positive");
    require(x >= 0.0 && !std::isnan(x), "gamma argument must be non-negative");
}
} // namespace

double exp_integral_e1(double x)
{
    require(x > 0.0 && !std::isnan(x), "E1 is defined for x > 0");
    if (x <= 1.0)
        return -kEulerGamma - std::log(x) - e1_series_tail(x);
    return std::exp(-x) * e1_scaled_fraction(x);
}

double exp_scaled_e1(double x)
{
    require(x > 0.0 && !std::isnan(x), "E1 is defined for x > 0");
    if (x <= 1.0)
        return std::exp(x) * exp_integral_e1(x);
    return e1_scaled_fraction(x);
}

double regularized_lower_gamma_general(double shape, double x)
{
    check_gamma_domain(shape, x);
    if (x == 0.0)
        return 0.0;
    if (std::isinf(x))
        return 1.0;
    if (x < shape + 1.0)
        return lower_gamma_series(shape, x);
    return 1.0 - upper_gamma_fraction(shape, x);
}

double regularized_lower_gamma(double shape, double x)
{
    check_gamma_domain(shape, x);
    if (x == 0.0)
        return 0.0;

    const bool small_integer = shape <= 64.0 && shape == std::floor(shape);
    if (!small_integer || x > 700.0)
        return regularized_lower_gamma_general(shape, x);

    // 1 - e^-x sum_{k < a} x^k / k!
    const int terms = static_cast<int>(shape);
    double term = std::exp(-x);
    double sum = term;
    for (int k = 1; k < terms; ++k)
    {
        term *= x / k;
        sum += term;
    }
    return std::clamp(1.0 - sum, 0.0, 1.0);
}

double ln_gamma(double x)
{
    require(x > 0.0 && std::isfinite(x), "ln_gamma is defined for x > 0");
    return boost::math::lgamma(x);
}

} // namespace efas
