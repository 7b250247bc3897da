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

#ifndef EFAS_COMMON_HPP
#define EFAS_COMMON_HPP

#include <Eigen/Dense>

#include <cmath>

#include <complex>
#include <stdexcept>
#include <string>

namespace efas
{

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;

// Error hierarchy. The CLI maps these onto exit codes (see tools/efas_cli.cpp).
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (x <= 0 for E1, negative gains, ...)
class DomainError : public Error
{
public:
    using Error::Error;
};

class DimensionError : public Error
{
public:
    using Error::Error;
};

// Omega_eq == 0: every performance metric is undefined
class DegenerateChannelError : public Error
{
public:
    using Error::Error;
};

// More users than antennas for zero-forcing
class InfeasibleError : public Error
{
public:
    using Error::Error;
};

// Non-finite result, quadrature non-convergence
class NumericalError : public Error
{
public:
    using Error::Error;
};

class SingularChannelError : public Error
{
public:
    using Error::Error;
};

class ConfigError : public Error
{
public:
    using Error::Error;
};

inline void require(bool condition, const std::string &message)
{
    if (!condition)
        throw DomainError(message);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

} // namespace efas

#endif
