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

#ifndef EFAS_STOCHASTIC_CHANNEL_HPP
#define EFAS_STOCHASTIC_CHANNEL_HPP

#include "efas/common.hpp"
#include "efas/rng.hpp"
#include "efas/surface_physics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace efas
{

// Physical surface description used by the layered model.
struct SurfaceConfig
{
    SurfaceWaveParams wave;
    RelaySpec relay;
    CMatrix g_path; // N_s x N_s routing

    CMatrix h_sur() const { return build_surface_channel(wave, g_path).h_sur; }
};

enum class Precoding
{
    kIsotropic,
    kZf
};

// Whether the isotropic precoder is redrawn with every channel realization or
// drawn once per run.
enum class PrecoderMode
{
    kRedrawn,
    kFixed
};

/// Full experiment description.
///
/// Either `surface` (layered physics) or `omega_sw_override` (direct Omega_sw
/// value, as used for the figure sweeps) must be set, never both. With an
/// override there is no relay, so sigma_eff^2 = sigma^2.
struct Scenario
{
    int m_antennas = 16;
    int k_users = 1;
    int n_s = 8;
    int n_l = 8;
    double p_total = 10.0;
    double sigma2 = 1.0;
    double sigma_r2 = 0.0;
    double beta_bs = 1.0;
    std::vector<double> beta_lu{1.0};
    std::vector<double> beta_dl{0.01};
    std::optional<SurfaceConfig> surface;
    std::optional<double> omega_sw_override;
    Precoding precoding = Precoding::kIsotropic;
    PrecoderMode precoder_mode = PrecoderMode::kRedrawn;
    OmegaNormalization normalization = kValidatedNormalization;

    // Throws ConfigError / InfeasibleError / DimensionError.
    void validate() const;

    double per_user_power() const { return p_total / k_users; }
    double effective_noise(int user = 0) const;
    double omega_sw(int user = 0) const;
    double omega_eq(int user = 0) const;
    // rho = P / sigma_eff^2
    double rho(int user = 0) const { return p_total / effective_noise(user); }
};

/// Symmetric override scenario with unit noise, P = 10^(snr_db/10) * sigma_eff^2.
Scenario override_scenario(int m_antennas, int k_users, double snr_db, double omega_sw, double beta_dl);

/// Layered scenario with identity routing, identity relay and a unit envelope
/// (d = 0, A0 = 1). N_s = N_L = n_ports.
Scenario identity_surface_scenario(int m_antennas, int n_ports, double beta_bs, double beta_lu, double beta_dl);

struct ChannelRealization
{
    CMatrix h_bs_sur;                    // N_s x M, entries CN(0, beta_BS)
    std::vector<CRowVector> h_relay_ue;  // per user, 1 x N_L, entries CN(0, beta_LU,u)
    std::vector<CRowVector> h_dl;        // per user, 1 x M, entries CN(0, beta_DL,u)
};

struct EquivalentChannelMatrix
{
    CMatrix h_eq; // M x K, column u ~ CN(0, Omega_eq,u I)
    std::vector<double> omega_eq;
};

CMatrix complex_gaussian_matrix(int rows, int cols, double variance, RandomStream &rng);

CVector isotropic_unit_vector(int m, RandomStream &rng);

ChannelRealization sample_layered_channel(const Scenario &scn, RandomStream &rng);

/// h_relay-UE,u W_relay H_sur H_BS-sur w + h_dl,u w
cplx equivalent_coefficient(const ChannelRealization &real, const Scenario &scn, const CVector &w, int user);

// Same, with the deterministic part W_relay H_sur (N_L x N_s) precomputed.
cplx equivalent_coefficient(const ChannelRealization &real, const CMatrix &surface_operator, const CVector &w,
                            int user);

inline CMatrix surface_operator(const SurfaceConfig &surface) { return surface.relay.matrix() * surface.h_sur(); }

EquivalentChannelMatrix sample_equivalent_matrix(const Scenario &scn, std::span<const double> omega_eq,
                                                 RandomStream &rng);

} // namespace efas

#endif
