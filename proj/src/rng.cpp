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

#include "efas/rng.hpp"

#include <cmath>
#include <numbers>

namespace efas
{

namespace
{
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
{
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

constexpr double k2Pow53Inv = 1.0 / 9007199254740992.0;

inline double to_unit(std::uint32_t a, std::uint32_t b)
{
    return static_cast<double>((static_cast<std::uint64_t>(a >> 5) << 26) | (b >> 6)) * k2Pow53Inv;
}
} // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index)
{
    std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t trial, StreamTag tag)
    : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
      tag_(static_cast<std::uint32_t>(tag)), trial_(trial)
{
}

void RandomStream::refill()
{
    // 32-bit block counter: 2^32 blocks (64 GiB of output) per substream.
    buffer_ = philox4x32_10({static_cast<std::uint32_t>(block_), tag_, static_cast<std::uint32_t>(trial_),
                             static_cast<std::uint32_t>(trial_ >> 32)},
                            key_);
    ++block_;
    used_ = 0;
}

RandomStream::result_type RandomStream::operator()()
{
    if (used_ == 4)
        refill();
    return buffer_[used_++];
}

double RandomStream::uniform()
{
    const std::uint32_t a = (*this)();
    const std::uint32_t b = (*this)();
    return to_unit(a, b);
}

double RandomStream::uniform_open()
{
    const std::uint32_t a = (*this)();
    const std::uint32_t b = (*this)();
    return to_unit(a, b) + 0.5 * k2Pow53Inv;
}

cplx RandomStream::complex_normal(double variance)
{
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double radius = std::sqrt(-variance * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

double RandomStream::normal()
{
    // Real part of CN(0, 2) is N(0, 1); the imaginary half is discarded so
    // the variate is a pure function of the stream position.
    return complex_normal(2.0).real();
}

} // namespace efas
