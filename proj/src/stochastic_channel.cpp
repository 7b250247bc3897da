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

#include "efas/stochastic_channel.hpp"

#include <string>

namespace efas
{

void Scenario::validate() const
{
    if (m_antennas < 1 || k_users < 1 || n_s < 1 || n_l < 1)
        throw ConfigError("array sizes must be positive");
    if (precoding == Precoding::kZf && k_users > m_antennas)
        throw InfeasibleError("zero-forcing needs K <= M (K=" + std::to_string(k_users) +
                              ", M=" + std::to_string(m_antennas) + ")");
    if (surface.has_value() == omega_sw_override.has_value())
        throw ConfigError("exactly one of surface spec / omega_sw override must be given");
    if (!(p_total >= 0.0) || !(sigma2 > 0.0) || sigma_r2 < 0.0 || beta_bs < 0.0)
        throw ConfigError("powers and noise variances out of range");
    if (beta_lu.size() != static_cast<std::size_t>(k_users) || beta_dl.size() != static_cast<std::size_t>(k_users))
        throw ConfigError("beta_lu and beta_dl need one entry per user");
    for (std::size_t u = 0; u < beta_lu.size(); ++u)
        if (beta_lu[u] < 0.0 || beta_dl[u] < 0.0)
            throw ConfigError("large-scale gains must be non-negative");
    if (omega_sw_override && *omega_sw_override < 0.0)
        throw ConfigError("omega_sw override must be non-negative");
    if (surface)
    {
        surface->relay.validate();
        if (surface->g_path.rows() != n_s || surface->g_path.cols() != n_s)
            throw DimensionError("routing matrix must be N_s x N_s");
        if (surface->relay.u.rows() != n_l || surface->relay.u.cols() != n_s)
            throw DimensionError("relay U must be N_L x N_s");
    }
}

double Scenario::effective_noise(int user) const
{
    if (!surface)
        return sigma2;
    return effective_noise_variance(sigma2, sigma_r2, beta_lu.at(user), surface->relay);
}

double Scenario::omega_sw(int user) const
{
    if (omega_sw_override)
        return *omega_sw_override;
    if (!surface)
        throw ConfigError("scenario has neither surface spec nor omega_sw override");
    return efas::omega_sw(beta_bs, beta_lu.at(user), surface->h_sur(), surface->relay, m_antennas, normalization);
}

double Scenario::omega_eq(int user) const { return efas::omega_eq(omega_sw(user), beta_dl.at(user)); }

Scenario override_scenario(int m_antennas, int k_users, double snr_db, double omega_sw, double beta_dl)
{
    Scenario scn;
    scn.m_antennas = m_antennas;
    scn.k_users = k_users;
    scn.sigma2 = 1.0;
    scn.p_total = db_to_linear(snr_db) * scn.sigma2;
    scn.beta_lu.assign(k_users, 1.0);
    scn.beta_dl.assign(k_users, beta_dl);
    scn.omega_sw_override = omega_sw;
    scn.precoding = k_users > 1 ? Precoding::kZf : Precoding::kIsotropic;
    return scn;
}

Scenario identity_surface_scenario(int m_antennas, int n_ports, double beta_bs, double beta_lu, double beta_dl)
{
    Scenario scn;
    scn.m_antennas = m_antennas;
    scn.k_users = 1;
    scn.n_s = n_ports;
    scn.n_l = n_ports;
    scn.beta_bs = beta_bs;
    scn.beta_lu = {beta_lu};
    scn.beta_dl = {beta_dl};
    scn.surface = SurfaceConfig{SurfaceWaveParams{}, identity_relay(n_ports), CMatrix::Identity(n_ports, n_ports)};
    return scn;
}

CMatrix complex_gaussian_matrix(int rows, int cols, double variance, RandomStream &rng)
{
    require(variance >= 0.0, "variance must be non-negative");
    CMatrix out(rows, cols);
    // Column-major fill order is part of the reproducibility contract.
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            out(r, c) = rng.complex_normal(variance);
    return out;
}

CVector isotropic_unit_vector(int m, RandomStream &rng)
{
    require(m >= 1, "dimension must be positive");
    for (;;)
    {
        CVector w = complex_gaussian_matrix(m, 1, 1.0, rng);
        const double norm = w.norm();
        if (norm > 0.0)
            return w / norm;
    }
}

ChannelRealization sample_layered_channel(const Scenario &scn, RandomStream &rng)
{
    if (!scn.surface)
        throw ConfigError("layered sampling needs a surface spec");

    ChannelRealization real;
    real.h_bs_sur = complex_gaussian_matrix(scn.n_s, scn.m_antennas, scn.beta_bs, rng);
    real.h_relay_ue.reserve(scn.k_users);
    real.h_dl.reserve(scn.k_users);
    for (int u = 0; u < scn.k_users; ++u)
    {
        real.h_relay_ue.emplace_back(complex_gaussian_matrix(1, scn.n_l, scn.beta_lu[u], rng));
        real.h_dl.emplace_back(complex_gaussian_matrix(1, scn.m_antennas, scn.beta_dl[u], rng));
    }
    return real;
}

cplx equivalent_coefficient(const ChannelRealization &real, const Scenario &scn, const CVector &w, int user)
{
    if (!scn.surface)
        throw ConfigError("equivalent coefficient needs a surface spec");
    return equivalent_coefficient(real, surface_operator(*scn.surface), w, user);
}

cplx equivalent_coefficient(const ChannelRealization &real, const CMatrix &surface_operator, const CVector &w,
                            int user)
{
    if (w.size() != real.h_bs_sur.cols() || user < 0 || user >= static_cast<int>(real.h_relay_ue.size()))
        throw DimensionError("precoder or user index does not match the realization");
    if (surface_operator.cols() != real.h_bs_sur.rows() || real.h_relay_ue[user].size() != surface_operator.rows())
        throw DimensionError("layered channel segments are not conformable");

    // Right-to-left keeps every product a matrix-vector product.
    const CVector guided = surface_operator * (real.h_bs_sur * w);
    const cplx surface_term = (real.h_relay_ue[user] * guided)(0, 0);
    const cplx direct_term = (real.h_dl[user] * w)(0, 0);
    return surface_term + direct_term;
}

EquivalentChannelMatrix sample_equivalent_matrix(const Scenario &scn, std::span<const double> omega_eq,
                                                 RandomStream &rng)
{
    if (omega_eq.size() != static_cast<std::size_t>(scn.k_users))
        throw DimensionError("need one Omega_eq per user");

    EquivalentChannelMatrix out;
    out.h_eq.resize(scn.m_antennas, scn.k_users);
    out.omega_eq.assign(omega_eq.begin(), omega_eq.end());
    for (int u = 0; u < scn.k_users; ++u)
    {
        require(omega_eq[u] >= 0.0, "Omega_eq must be non-negative");
        for (int r = 0; r < scn.m_antennas; ++r)
            out.h_eq(r, u) = rng.complex_normal(omega_eq[u]);
    }
    return out;
}

} // namespace efas
