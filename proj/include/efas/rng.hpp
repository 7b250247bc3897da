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

#ifndef EFAS_RNG_HPP
#define EFAS_RNG_HPP

#include "efas/common.hpp"

#include <array>
#include <cstdint>
#include <limits>

namespace efas
{

/// Philox4x32-10 block cipher (Salmon et al., SC'11). Pure function of
/// (counter, key); used as the only source of randomness in the project.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Seed for the index-th independent sub-experiment (grid point) of a run,
/// via the SplitMix64 finalizer.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

// Purpose tags for per-trial substreams. Values are part of the
// reproducibility contract: changing them changes every golden output.
enum class StreamTag : std::uint32_t
{
    kLayeredChannel = 1,
    kPrecoder = 2,
    kFixedPrecoder = 3,
    kEquivalentChannel = 4,
    kSingleUser = 5,
    kZfChannel = 6,
    kValidation = 7,
    kUser = 1000, // kUser + n for ad-hoc test streams
};

/// Random stream for one (master seed, trial, tag) triple.
///
/// The key is the 64-bit master seed; the 128-bit counter is
/// (block, tag, trial_lo, trial_hi). Streams for different trials or tags
/// never overlap, so trial results do not depend on which worker ran them.
///
/// Normal variates use the Box-Muller transform on two 53-bit uniforms in
/// (0, 1); one Philox block yields exactly one complex normal.
class RandomStream
{
public:
    using result_type = std::uint32_t;

    RandomStream(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()();

    // [0, 1)
    double uniform();
    // (0, 1)
    double uniform_open();
    // Circularly symmetric CN(0, variance): real and imaginary parts N(0, variance/2).
    cplx complex_normal(double variance = 1.0);
    double normal();

    std::uint64_t blocks_consumed() const { return block_; }

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint32_t tag_;
    std::uint64_t trial_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

} // namespace efas

#endif
