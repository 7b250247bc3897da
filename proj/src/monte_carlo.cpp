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

#include "efas/monte_carlo.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace efas
{

namespace
{
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_trials(const McOptions &opts)
{
    if (opts.trials == 0)
        throw ConfigError("Monte-Carlo run needs at least one trial");
}

void check_zf(const Scenario &scn, double omega_eq)
{
    if (scn.k_users > scn.m_antennas)
        throw InfeasibleError("zero-forcing needs K <= M");
    require(omega_eq >= 0.0, "Omega_eq must be non-negative");
}

std::size_t count_censored(std::span<const double> values)
{
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](double v) { return std::isnan(v); }));
}

void check_censoring(std::size_t censored, std::size_t trials)
{
    if (static_cast<double>(censored) > kMaxCensoredFraction * static_cast<double>(trials))
        throw ConfigError("persistent singular zero-forcing channels: " + std::to_string(censored) + " of " +
                          std::to_string(trials) + " draws censored");
}

// Upper-triangular R of a thin QR and its inverse; false if the Frobenius
// condition estimate breaches the cap or the factor is singular.
bool factor_channel(const Eigen::HouseholderQR<CMatrix> &qr, Eigen::Index k, double condition_cap, CMatrix &r_inv)
{
    const CMatrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < k; ++i)
        if (r(i, i) == cplx(0.0, 0.0))
            return false;
    r_inv = r.triangularView<Eigen::Upper>().solve(CMatrix::Identity(k, k));
    const double cond = r.norm() * r_inv.norm();
    return std::isfinite(cond) && cond <= condition_cap;
}

// Isotropic precoder shared by every trial in fixed mode.
CVector fixed_precoder(const Scenario &scn, const McOptions &opts)
{
    RandomStream rng(opts.seed, 0, StreamTag::kFixedPrecoder);
    return isotropic_unit_vector(scn.m_antennas, rng);
}

CVector trial_precoder(const Scenario &scn, const McOptions &opts, std::size_t trial, const CVector &fixed)
{
    if (scn.precoder_mode == PrecoderMode::kFixed)
        return fixed;
    RandomStream rng(opts.seed, trial, StreamTag::kPrecoder);
    return isotropic_unit_vector(scn.m_antennas, rng);
}

std::string format_double(double v)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

std::string fingerprint(const Scenario &scn, double omega_eq, const McOptions &opts)
{
    return "zf-sinr;m=" + std::to_string(scn.m_antennas) + ";k=" + std::to_string(scn.k_users) +
           ";p=" + format_double(scn.p_total) + ";sigma_eff2=" + format_double(scn.effective_noise()) +
           ";omega_eq=" + format_double(omega_eq) + ";trials=" + std::to_string(opts.trials) +
           ";seed=" + std::to_string(opts.seed) + ";cond_cap=" + format_double(opts.condition_cap);
}

// SINR of every user for one ZF trial, or false when censored.
bool zf_trial_sinr(const Scenario &scn, double omega_eq, const McOptions &opts, std::size_t trial,
                   std::span<double> sinr)
{
    RandomStream rng(opts.seed, trial, StreamTag::kZfChannel);
    const std::vector<double> omegas(scn.k_users, omega_eq);
    const auto eq = sample_equivalent_matrix(scn, omegas, rng);
    if (!zf_effective_gains(eq.h_eq, sinr, opts.condition_cap))
        return false;
    const double scale = scn.per_user_power() / scn.effective_noise();
    for (double &s : sinr)
        s *= scale;
    return true;
}
} // namespace

const char *to_string(Lemma1Verdict verdict)
{
    switch (verdict)
    {
    case Lemma1Verdict::kPaper:
        return "paper";
    case Lemma1Verdict::kUnnormalized:
        return "unnormalized";
    case Lemma1Verdict::kIndistinguishable:
        return "indistinguishable";
    case Lemma1Verdict::kInconclusive:
        break;
    }
    return "inconclusive";
}

namespace detail
{
unsigned resolve_workers(unsigned requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}
} // namespace detail

MonteCarloEstimate estimate_from_trials(std::span<const double> values, double confidence)
{
    std::vector<double> kept;
    kept.reserve(values.size());
    for (double v : values)
        if (!std::isnan(v))
            kept.push_back(v);
    if (kept.empty())
        throw NumericalError("every Monte-Carlo trial was censored");
    if (kept.size() == 1)
        return MonteCarloEstimate{kept[0], 0.0, 1, kept[0], kept[0], confidence};
    return mean_confidence_interval(kept, confidence);
}

CMatrix zf_precoder(const CMatrix &h_eq, double condition_cap)
{
    const Eigen::Index m = h_eq.rows();
    const Eigen::Index k = h_eq.cols();
    if (k == 0 || k > m)
        throw InfeasibleError("zero-forcing needs 1 <= K <= M");

    const Eigen::HouseholderQR<CMatrix> qr(h_eq);
    CMatrix r_inv;
    if (!factor_channel(qr, k, condition_cap, r_inv))
        throw SingularChannelError("channel matrix is rank deficient or breaches the condition cap");

    // H (H^H H)^-1 = Q R^-H
    const CMatrix q = qr.householderQ() * CMatrix::Identity(m, k);
    CMatrix w = q * r_inv.adjoint();
    for (Eigen::Index u = 0; u < k; ++u)
        w.col(u).normalize();
    return w;
}

bool zf_effective_gains(const CMatrix &h_eq, std::span<double> gains, double condition_cap)
{
    const Eigen::Index k = h_eq.cols();
    if (k == 0 || k > h_eq.rows())
        throw InfeasibleError("zero-forcing needs 1 <= K <= M");
    if (gains.size() != static_cast<std::size_t>(k))
        throw DimensionError("gain buffer must hold one entry per user");

    const Eigen::HouseholderQR<CMatrix> qr(h_eq);
    CMatrix r_inv;
    if (!factor_channel(qr, k, condition_cap, r_inv))
        return false;
    // (H^H H)^-1 = R^-1 R^-H, so its u-th diagonal entry is ||row u of R^-1||^2.
    for (Eigen::Index u = 0; u < k; ++u)
        gains[u] = 1.0 / r_inv.row(u).squaredNorm();
    return true;
}

std::vector<double> sample_single_user_gains(const Scenario &scn, const McOptions &opts)
{
    scn.validate();
    check_trials(opts);
    if (scn.k_users != 1 || scn.precoding != Precoding::kIsotropic)
        throw ConfigError("single-user simulation needs K = 1 with isotropic precoding");

    std::vector<double> gains(opts.trials);
    if (scn.surface)
    {
        const auto coefficients = sample_layered_coefficients(scn, opts);
        for (std::size_t i = 0; i < gains.size(); ++i)
            gains[i] = std::norm(coefficients[i]);
        return gains;
    }

    // Equivalent-channel sampling: independent surface and direct components.
    const double omega_sw = scn.omega_sw(0);
    const double beta_dl = scn.beta_dl[0];
    detail::for_each_trial(opts.trials, opts, [&](std::size_t i) {
        RandomStream rng(opts.seed, i, StreamTag::kSingleUser);
        const cplx surface_part = rng.complex_normal(omega_sw);
        const cplx direct_part = rng.complex_normal(beta_dl);
        gains[i] = std::norm(surface_part + direct_part);
    });
    return gains;
}

std::vector<cplx> sample_layered_coefficients(const Scenario &scn, const McOptions &opts)
{
    scn.validate();
    check_trials(opts);
    if (!scn.surface)
        throw ConfigError("layered sampling needs a surface spec");

    const CMatrix op = surface_operator(*scn.surface);
    const CVector fixed = scn.precoder_mode == PrecoderMode::kFixed ? fixed_precoder(scn, opts) : CVector();
    std::vector<cplx> out(opts.trials);
    detail::for_each_trial(opts.trials, opts, [&](std::size_t i) {
        RandomStream rng(opts.seed, i, StreamTag::kLayeredChannel);
        const auto real = sample_layered_channel(scn, rng);
        const CVector w = trial_precoder(scn, opts, i, fixed);
        out[i] = equivalent_coefficient(real, op, w, 0);
    });
    return out;
}

MonteCarloEstimate simulate_outage(const Scenario &scn, double r0, const McOptions &opts)
{
    require(r0 > 0.0, "target rate must be positive");
    const double gamma0 = std::exp2(r0) - 1.0;
    const double rho = scn.rho();
    auto values = sample_single_user_gains(scn, opts);
    for (double &v : values)
        v = rho * v < gamma0 ? 1.0 : 0.0;
    return estimate_from_trials(values, opts.confidence);
}

MonteCarloEstimate simulate_capacity(const Scenario &scn, const McOptions &opts)
{
    const double rho = scn.rho();
    auto values = sample_single_user_gains(scn, opts);
    for (double &v : values)
        v = std::log1p(rho * v) / std::numbers::ln2;
    return estimate_from_trials(values, opts.confidence);
}

SinrSampleSet sample_zf_sinr(const Scenario &scn, double omega_eq, const McOptions &opts)
{
    scn.validate();
    check_trials(opts);
    check_zf(scn, omega_eq);

    std::vector<double> first(opts.trials);
    detail::for_each_trial(opts.trials, opts, [&](std::size_t i) {
        std::vector<double> sinr(scn.k_users);
        first[i] = zf_trial_sinr(scn, omega_eq, opts, i, sinr) ? sinr[0] : kNaN;
    });

    SinrSampleSet out;
    out.seed = opts.seed;
    out.fingerprint = fingerprint(scn, omega_eq, opts);
    out.censored = count_censored(first);
    check_censoring(out.censored, opts.trials);
    out.samples.reserve(first.size() - out.censored);
    for (double v : first)
        if (!std::isnan(v))
            out.samples.push_back(v);
    return out;
}

MonteCarloEstimate simulate_sum_rate(const Scenario &scn, double omega_eq, const McOptions &opts)
{
    scn.validate();
    check_trials(opts);
    check_zf(scn, omega_eq);

    std::vector<double> rates(opts.trials);
    detail::for_each_trial(opts.trials, opts, [&](std::size_t i) {
        std::vector<double> sinr(scn.k_users);
        if (!zf_trial_sinr(scn, omega_eq, opts, i, sinr))
        {
            rates[i] = kNaN;
            return;
        }
        double sum = 0.0;
        for (double s : sinr)
            sum += std::log1p(s);
        rates[i] = sum / std::numbers::ln2;
    });
    check_censoring(count_censored(rates), opts.trials);
    return estimate_from_trials(rates, opts.confidence);
}

Lemma1Record lemma1_oracle(const Scenario &scn, const McOptions &opts)
{
    scn.validate();
    check_trials(opts);
    if (!scn.surface)
        throw ConfigError("lemma1 oracle needs a surface spec");

    const CMatrix op = surface_operator(*scn.surface);
    const CVector fixed = scn.precoder_mode == PrecoderMode::kFixed ? fixed_precoder(scn, opts) : CVector();
    std::vector<double> power(opts.trials);
    detail::for_each_trial(opts.trials, opts, [&](std::size_t i) {
        RandomStream rng(opts.seed, i, StreamTag::kLayeredChannel);
        const auto real = sample_layered_channel(scn, rng);
        const CVector w = trial_precoder(scn, opts, i, fixed);
        // T_u w with T_u = h_relay-UE W_relay H_sur H_BS-sur; no direct link.
        const cplx t_w = (real.h_relay_ue[0] * (op * (real.h_bs_sur * w)))(0, 0);
        power[i] = std::norm(t_w);
    });

    Lemma1Record record;
    record.empirical = estimate_from_trials(power, opts.confidence);
    const CMatrix h_sur = scn.surface->h_sur();
    record.paper_value = omega_sw(scn.beta_bs, scn.beta_lu[0], h_sur, scn.surface->relay, scn.m_antennas,
                                  OmegaNormalization::kPaper);
    record.unnormalized_value = omega_sw(scn.beta_bs, scn.beta_lu[0], h_sur, scn.surface->relay, scn.m_antennas,
                                         OmegaNormalization::kUnnormalized);

    const double band = 3.0 * record.empirical.std_err;
    const bool paper_ok = std::abs(record.empirical.mean - record.paper_value) <= band;
    const bool unnormalized_ok = std::abs(record.empirical.mean - record.unnormalized_value) <= band;
    if (paper_ok && unnormalized_ok)
        record.verdict = Lemma1Verdict::kIndistinguishable;
    else if (paper_ok)
        record.verdict = Lemma1Verdict::kPaper;
    else if (unnormalized_ok)
        record.verdict = Lemma1Verdict::kUnnormalized;
    else
        record.verdict = Lemma1Verdict::kInconclusive;
    return record;
}

std::vector<double> interference_residual_samples(const Scenario &scn, double omega_eq, const McOptions &opts)
{
    scn.validate();
    check_trials(opts);
    check_zf(scn, omega_eq);

    std::vector<double> residual(opts.trials);
    detail::for_each_trial(opts.trials, opts, [&](std::size_t i) {
        RandomStream rng(opts.seed, i, StreamTag::kZfChannel);
        const std::vector<double> omegas(scn.k_users, omega_eq);
        const CMatrix h = sample_equivalent_matrix(scn, omegas, rng).h_eq;
        CMatrix w;
        try
        {
            w = zf_precoder(h, opts.condition_cap);
        }
        catch (const SingularChannelError &)
        {
            residual[i] = kNaN;
            return;
        }
        // (h_u^H w_i) for all u, i; the common P/K factor cancels.
        const CMatrix cross = h.adjoint() * w;
        double total = 0.0;
        for (Eigen::Index u = 0; u < cross.rows(); ++u)
        {
            double leak = 0.0;
            for (Eigen::Index c = 0; c < cross.cols(); ++c)
                if (c != u)
                    leak += std::norm(cross(u, c));
            total += leak / std::norm(cross(u, u));
        }
        residual[i] = total / static_cast<double>(cross.rows());
    });
    check_censoring(count_censored(residual), opts.trials);
    return residual;
}

MonteCarloEstimate interference_residual(const Scenario &scn, double omega_eq, const McOptions &opts)
{
    const auto samples = interference_residual_samples(scn, omega_eq, opts);
    return estimate_from_trials(samples, opts.confidence);
}

} // namespace efas
