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

#include "efas/stats.hpp"

#include "efas/common.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

namespace efas
{

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples))
{
    require(!sorted_.empty(), "ECDF needs at least one sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const
{
    const auto upper = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(upper - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double ecdf_eval(const Ecdf &ecdf, double x) { return ecdf(x); }

double ks_statistic(std::span<const double> samples, const std::function<double(double)> &cdf)
{
    require(!samples.empty(), "KS statistic needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());

    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        const double f = cdf(sorted[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

std::vector<double> HistogramDensity::bin_centers() const
{
    std::vector<double> centers(densities.size());
    for (std::size_t b = 0; b < densities.size(); ++b)
        centers[b] = 0.5 * (bin_edges[b] + bin_edges[b + 1]);
    return centers;
}

HistogramDensity histogram_density(std::span<const double> samples, int bins)
{
    require(bins > 0, "bin count must be positive");
    require(samples.size() >= static_cast<std::size_t>(bins), "need at least as many samples as bins");

    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it;
    const double hi = *hi_it;

    HistogramDensity h;
    if (!(hi > lo))
    {
        h.bin_edges = {lo - 0.5, lo + 0.5};
        h.densities = {1.0};
        return h;
    }

    const double width = (hi - lo) / bins;
    h.bin_edges.resize(bins + 1);
    for (int b = 0; b <= bins; ++b)
        h.bin_edges[b] = lo + b * width;
    h.bin_edges[bins] = hi;

    std::vector<std::size_t> counts(bins, 0);
    for (double x : samples)
    {
        // max lands in the last bin (closed on the right)
        const auto b = std::min(static_cast<int>((x - lo) / width), bins - 1);
        ++counts[b];
    }

    const double n = static_cast<double>(samples.size());
    h.densities.resize(bins);
    for (int b = 0; b < bins; ++b)
        h.densities[b] = counts[b] / (n * width);
    return h;
}

double normal_critical_value(double confidence)
{
    require(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
    const boost::math::normal standard;
    return boost::math::quantile(standard, 0.5 + 0.5 * confidence);
}

MonteCarloEstimate mean_confidence_interval(std::span<const double> samples, double confidence)
{
    require(samples.size() >= 2, "confidence interval needs at least two samples");
    const double z = normal_critical_value(confidence);

    // Two passes in index order: the result depends only on sample order.
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double x : samples)
        sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : samples)
        ss += (x - mean) * (x - mean);
    const double std_err = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);

    return MonteCarloEstimate{mean, std_err, samples.size(), mean - z * std_err, mean + z * std_err, confidence};
}

} // namespace efas
