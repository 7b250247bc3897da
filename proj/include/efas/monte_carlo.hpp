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

#ifndef EFAS_MONTE_CARLO_HPP
#define EFAS_MONTE_CARLO_HPP

#include "efas/stats.hpp"
#include "efas/stochastic_channel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace efas
{

inline constexpr double kDefaultConditionCap = 1e10;
// More censored (singular) ZF draws than this fraction is a configuration error.
inline constexpr double kMaxCensoredFraction = 1e-3;

struct McOptions
{
    std::uint64_t seed = 1;
    std::size_t trials = 100000;
    unsigned workers = 0; // 0: hardware concurrency
    std::size_t batch_size = 4096;
    double confidence = 0.95;
    double condition_cap = kDefaultConditionCap;
};

struct SinrSampleSet
{
    std::vector<double> samples; // linear SINR of user 1, trial order
    std::string fingerprint;     // canonical description of the generating configuration
    std::uint64_t seed = 0;
    std::size_t censored = 0;    // singular draws dropped
};

enum class Lemma1Verdict
{
    kPaper,
    kUnnormalized,
    kIndistinguishable, // both candidates inside the band (degenerate configurations)
    kInconclusive
};

const char *to_string(Lemma1Verdict verdict);

struct Lemma1Record
{
    MonteCarloEstimate empirical; // E{|T_u w|^2}
    double paper_value = 0.0;
    double unnormalized_value = 0.0;
    Lemma1Verdict verdict = Lemma1Verdict::kInconclusive;
};

/// Column-normalized zero-forcing precoder W = H (H^H H)^-1 D, ||w_u|| = 1.
///
/// Computed as Q R^-H from a thin QR of H. Throws SingularChannelError when
/// the Frobenius condition estimate ||R||_F ||R^-1||_F exceeds condition_cap
/// (this bounds the 2-norm condition number from above).
CMatrix zf_precoder(const CMatrix &h_eq, double condition_cap = kDefaultConditionCap);

/// Per-user 1 / [(H^H H)^-1]_uu = |h_u^H w_u|^2 for the column-normalized
/// ZF precoder, without forming W. Returns false (gains untouched) when the
/// condition cap is breached.
bool zf_effective_gains(const CMatrix &h_eq, std::span<double> gains, double condition_cap = kDefaultConditionCap);

MonteCarloEstimate simulate_outage(const Scenario &scn, double r0, const McOptions &opts);
MonteCarloEstimate simulate_capacity(const Scenario &scn, const McOptions &opts);

// Per-trial |h_eq|^2 of the single-user link (layered or equivalent sampling).
std::vector<double> sample_single_user_gains(const Scenario &scn, const McOptions &opts);

// Layered-model h_eq for user 1, one per trial; needs a surface spec.
std::vector<cplx> sample_layered_coefficients(const Scenario &scn, const McOptions &opts);

SinrSampleSet sample_zf_sinr(const Scenario &scn, double omega_eq, const McOptions &opts);
MonteCarloEstimate simulate_sum_rate(const Scenario &scn, double omega_eq, const McOptions &opts);

Lemma1Record lemma1_oracle(const Scenario &scn, const McOptions &opts);

// Per-trial mean over users of sum_{i != u} |h_u^H w_i|^2 / |h_u^H w_u|^2.
std::vector<double> interference_residual_samples(const Scenario &scn, double omega_eq, const McOptions &opts);
MonteCarloEstimate interference_residual(const Scenario &scn, double omega_eq, const McOptions &opts);

// Estimator over per-trial values; NaN entries are censored trials and skipped.
MonteCarloEstimate estimate_from_trials(std::span<const double> values, double confidence);

namespace detail
{

unsigned resolve_workers(unsigned requested);

/// Calls fn(i) exactly once for every i in [0, trials). Workers pull fixed
/// batches of trial indices; fn must only write to state owned by index i.
template <class Fn>
void for_each_trial(std::size_t trials, const McOptions &opts, Fn &&fn)
{
    const std::size_t batch = std::max<std::size_t>(opts.batch_size, 1);
    const std::size_t batches = (trials + batch - 1) / batch;
    const unsigned workers = std::min<std::size_t>(resolve_workers(opts.workers), std::max<std::size_t>(batches, 1));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        for (std::size_t b = next++; b < batches; b = next++)
        {
            try
            {
                const std::size_t end = std::min(trials, (b + 1) * batch);
                for (std::size_t i = b * batch; i < end; ++i)
                    fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = batches;
            }
        }
    };

    if (workers <= 1)
        work();
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);
}

} // namespace detail

} // namespace efas

#endif
