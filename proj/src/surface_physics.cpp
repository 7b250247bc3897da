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

#include "efas/surface_physics.hpp"

#include <cmath>

namespace efas
{

namespace
{
constexpr double kUnitaryTolerance = 1e-12;

bool is_identity(const CMatrix &m)
{
    return (m - CMatrix::Identity(m.rows(), m.cols())).norm() < kUnitaryTolerance;
}
} // namespace

void RelaySpec::validate() const
{
    if (u.size() == 0)
        throw DimensionError("relay matrix U is empty");

    if (kind == RelayKind::kUnitary)
    {
        // Rectangular U only has an identity Gram on its short side.
        const bool ok_rows = u.rows() > u.cols() || is_identity(u * u.adjoint());
        const bool ok_cols = u.cols() > u.rows() || is_identity(u.adjoint() * u);
        if (!ok_rows || !ok_cols)
            throw DomainError("relay matrix U is not unitary");
        return;
    }

    for (Eigen::Index r = 0; r < u.rows(); ++r)
        for (Eigen::Index c = 0; c < u.cols(); ++c)
        {
            const cplx v = u(r, c);
            if (v != cplx(0.0, 0.0) && v != cplx(1.0, 0.0))
                throw DomainError("selection matrix entries must be 0 or 1");
        }
    const auto ones = u.real().cwiseAbs();
    if (ones.rowwise().sum().maxCoeff() > 1.0 || ones.colwise().sum().maxCoeff() > 1.0)
        throw DomainError("selection matrix has more than one 1 in a row or column");
}

RelaySpec identity_relay(int n_ports, cplx alpha_r)
{
    return RelaySpec{alpha_r, CMatrix::Identity(n_ports, n_ports), RelayKind::kUnitary};
}

double free_space_wavenumber(double omega, double mu0, double eps0) { return omega * std::sqrt(mu0 * eps0); }

double free_space_impedance(double mu0, double eps0) { return std::sqrt(mu0 / eps0); }

cplx propagation_constant(const SurfaceImpedanceSpec &spec)
{
    require(spec.omega > 0.0 && std::isfinite(spec.omega), "omega must be positive");
    require(spec.mu0 > 0.0 && spec.eps0 > 0.0, "mu0 and eps0 must be positive");

    const cplx j(0.0, 1.0);
    const cplx coupling = -j * spec.omega * spec.eps0 * spec.z_sur;
    const cplx radicand = -spec.omega * spec.omega * spec.mu0 * spec.eps0 - coupling * coupling;

    // std::sqrt is the principal branch (Re >= 0). On the cut the sign of a
    // signed-zero imaginary part decides Im, so pin it to Im >= 0.
    cplx gamma = std::sqrt(radicand);
    if (gamma.real() == 0.0 && gamma.imag() < 0.0)
        gamma = -gamma;

    if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag()))
        throw NumericalError("propagation constant is not finite");
    return gamma;
}

cplx surface_wave_envelope(const SurfaceWaveParams &params)
{
    require(params.d >= 0.0, "path length must be non-negative");
    const double d = params.d;
    return params.a0 * std::exp(-params.alpha() * d) * std::polar(1.0, -params.beta() * d);
}

SurfaceChannel build_surface_channel(const SurfaceWaveParams &params, const CMatrix &g_path)
{
    if (g_path.rows() != g_path.cols() || g_path.size() == 0)
        throw DimensionError("routing matrix must be square and non-empty");
    if (!g_path.allFinite())
        throw DomainError("routing matrix has non-finite entries");

    const cplx envelope = surface_wave_envelope(params);
    return SurfaceChannel{envelope * g_path, g_path, envelope};
}

double omega_sw(double beta_bs, double beta_lu, const CMatrix &h_sur, const RelaySpec &relay, int m_antennas,
                OmegaNormalization normalization)
{
    require(beta_bs >= 0.0 && beta_lu >= 0.0, "large-scale gains must be non-negative");
    require(m_antennas > 0, "antenna count must be positive");
    if (h_sur.rows() != h_sur.cols() || relay.u.cols() != h_sur.rows())
        throw DimensionError("relay U must be N_L x N_s with H_sur N_s x N_s");

    const CMatrix wh = relay.matrix() * h_sur;
    // tr(A^H A) is the squared Frobenius norm, real by construction.
    double value = beta_bs * beta_lu * wh.squaredNorm();
    if (normalization == OmegaNormalization::kPaper)
        value /= static_cast<double>(m_antennas);
    return value;
}

double omega_eq(double omega_sw, double beta_dl)
{
    require(omega_sw >= 0.0 && beta_dl >= 0.0, "variances must be non-negative");
    if (omega_sw == 0.0 && beta_dl == 0.0)
        throw DegenerateChannelError("both surface-wave and direct gains are zero");
    return omega_sw + beta_dl;
}

double effective_noise_variance(double sigma2, double sigma_r2, double beta_lu, const RelaySpec &relay)
{
    require(sigma2 > 0.0, "receiver noise variance must be positive");
    require(sigma_r2 >= 0.0 && beta_lu >= 0.0, "relay noise and gain must be non-negative");
    return sigma2 + sigma_r2 * beta_lu * relay.matrix().squaredNorm();
}

} // namespace efas
