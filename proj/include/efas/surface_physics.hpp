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

#ifndef EFAS_SURFACE_PHYSICS_HPP
#define EFAS_SURFACE_PHYSICS_HPP

#include "efas/common.hpp"

#include <numbers>

namespace efas
{

inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi; // H/m
inline constexpr double kEps0 = 8.8541878128e-12;         // F/m

struct SurfaceImpedanceSpec
{
    cplx z_sur{0.0, 0.0}; // ohms
    double omega = 0.0;   // rad/s
    double mu0 = kMu0;
    double eps0 = kEps0;
};

// Guided-wave parameters. alpha() and beta() are views of gamma, so the
// attenuation/phase pair can never drift from the propagation constant.
struct SurfaceWaveParams
{
    cplx gamma{0.0, 0.0}; // 1/m
    cplx a0{1.0, 0.0};    // coupling and excitation efficiency
    double d = 0.0;       // path length, m

    double alpha() const { return gamma.real(); }
    double beta() const { return gamma.imag(); }
};

enum class RelayKind
{
    kUnitary,
    kSelection
};

// Launcher processing W_relay = alpha_r * U with U of size N_L x N_s.
struct RelaySpec
{
    cplx alpha_r{1.0, 0.0};
    CMatrix u;
    RelayKind kind = RelayKind::kUnitary;

    CMatrix matrix() const { return alpha_r * u; }
    // Throws DomainError if U is not (semi-)unitary / a selection matrix.
    void validate() const;
};

RelaySpec identity_relay(int n_ports, cplx alpha_r = {1.0, 0.0});

struct SurfaceChannel
{
    CMatrix h_sur;  // N_s x N_s
    CMatrix g_path; // deterministic routing
    cplx h_sw_scalar{0.0, 0.0};
};

// Scaling of the surface-wave gain trace. kPaper carries the 1/M factor as
// printed; kUnnormalized is what the layered model actually produces
// (settled by lemma1_oracle, see monte_carlo.hpp).
enum class OmegaNormalization
{
    kPaper,
    kUnnormalized
};

inline constexpr OmegaNormalization kValidatedNormalization = OmegaNormalization::kUnnormalized;

double free_space_wavenumber(double omega, double mu0 = kMu0, double eps0 = kEps0);
double free_space_impedance(double mu0 = kMu0, double eps0 = kEps0);

/// Surface-wave propagation constant
///   gamma = sqrt(-w^2 mu0 eps0 - (-j w eps0 Z_sur)^2)
/// on the branch Re(gamma) >= 0 (non-growing envelope); Im(gamma) >= 0 when
/// Re(gamma) == 0.
cplx propagation_constant(const SurfaceImpedanceSpec &spec);

/// A0 exp(-alpha d) exp(-j beta d)
cplx surface_wave_envelope(const SurfaceWaveParams &params);

SurfaceChannel build_surface_channel(const SurfaceWaveParams &params, const CMatrix &g_path);

/// Surface-wave assisted channel gain
///   (beta_BS beta_LU [/ M]) tr(H_sur^H W^H W H_sur)
double omega_sw(double beta_bs, double beta_lu, const CMatrix &h_sur, const RelaySpec &relay, int m_antennas,
                OmegaNormalization normalization = kValidatedNormalization);

double omega_eq(double omega_sw, double beta_dl);

/// sigma^2 + sigma_r^2 beta_LU tr(W W^H)
double effective_noise_variance(double sigma2, double sigma_r2, double beta_lu, const RelaySpec &relay);

} // namespace efas

#endif
