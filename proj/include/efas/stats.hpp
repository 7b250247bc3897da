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

#ifndef EFAS_STATS_HPP
#define EFAS_STATS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace efas
{

/// Mergeable Monte-Carlo estimator summary with a normal-approximation
/// confidence interval.
struct MonteCarloEstimate
{
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t n = 0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double confidence = 0.95;
};

class Ecdf
{
public:
    explicit Ecdf(std::vector<double> samples);

    // Fraction of samples <= x.
    double operator()(double x) const;

    std::span<const double> sorted_samples() const { return sorted_; }
    std::size_t n() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

double ecdf_eval(const Ecdf &ecdf, double x);

/// One-sample Kolmogorov-Smirnov distance
///   max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)
double ks_statistic(std::span<const double> samples, const std::function<double(double)> &cdf);

// Asymptotic critical value c_alpha / sqrt(n), e.g. 1.36 (5%) or 1.63 (1%).
inline double ks_threshold(double coefficient, std::size_t n)
{
    return coefficient / std::sqrt(static_cast<double>(n));
}

struct HistogramDensity
{
    std::vector<double> bin_edges; // ascending, size B + 1
    std::vector<double> densities; // size B, integrates to 1

    double bin_width() const { return bin_edges.size() > 1 ? bin_edges[1] - bin_edges[0] : 0.0; }
    std::vector<double> bin_centers() const;
};

/// Equal-width histogram on [min, max] normalized to unit area. All-equal
/// samples collapse to one unit-width bin centred on the value.
HistogramDensity histogram_density(std::span<const double> samples, int bins);

// Two-sided standard normal quantile for the given confidence level.
double normal_critical_value(double confidence);

MonteCarloEstimate mean_confidence_interval(std::span<const double> samples, double confidence);

} // namespace efas

#endif
