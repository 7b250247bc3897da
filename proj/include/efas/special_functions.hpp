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

#ifndef EFAS_SPECIAL_FUNCTIONS_HPP
#define EFAS_SPECIAL_FUNCTIONS_HPP

#include "efas/common.hpp"

namespace efas
{

inline constexpr double kEulerGamma = 0.5772156649015329;

/// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
///
/// Power series for x <= 1, modified Lentz continued fraction for x > 1;
/// relative error below 1e-14 on both sides of the crossover.
double exp_integral_e1(double x);

/// e^x E1(x) without overflow for large x (the capacity kernel).
double exp_scaled_e1(double x);

/// Regularized lower incomplete gamma P(a, x). Integer a <= 64 uses the finite
/// Poisson sum; otherwise the series (x < a + 1) or the continued fraction for Q.
double regularized_lower_gamma(double shape, double x);

// General path only; exposed so the integer fast path can be cross-checked.
double regularized_lower_gamma_general(double shape, double x);

double ln_gamma(double x);

} // namespace efas

#endif
