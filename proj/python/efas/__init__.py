# SPDX-License-Identifier: Apache-2.0
"""Python bindings for the efas-sim link-level simulator."""

from ._core import (  # noqa: F401
    ConfigError,
    DomainError,
    InfeasibleError,
    NumericalError,
    SingularChannelError,
    __version__,
    derive_seed,
    ergodic_capacity,
    ergodic_capacity_high_snr,
    exp_integral_e1,
    ks_statistic_gamma,
    omega_eq,
    outage_probability,
    philox4x32_10,
    propagation_constant,
    regularized_lower_gamma,
    run,
    sample_zf_sinr,
    simulate_capacity,
    simulate_outage,
    zf_precoder,
    zf_sinr_params,
    zf_sum_rate,
)
