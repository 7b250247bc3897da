# SPDX-License-Identifier: Apache-2.0
#
# efas-sim: link-level simulator for surface-wave assisted MU-MIMO downlinks
# Copyright (C) 2026 The efas-sim authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

import math

import numpy as np
import pytest

import efas


def test_special_functions():
    assert efas.exp_integral_e1(1.0) == pytest.approx(0.21938393439552029, rel=1e-14)
    assert efas.regularized_lower_gamma(1.0, 2.0) == pytest.approx(-math.expm1(-2.0), rel=1e-14)
    with pytest.raises(efas.DomainError):
        efas.exp_integral_e1(0.0)


def test_propagation_constant_branch():
    gamma = efas.propagation_constant(100 + 100j, 30e9)
    assert gamma.real > 0
    assert gamma.real == pytest.approx(44.1925633719, rel=1e-9)
    assert gamma.imag == pytest.approx(630.304652121, rel=1e-9)


def test_closed_forms():
    assert efas.outage_probability(10.0, efas.omega_eq(1.0, 0.01)) == pytest.approx(0.094267, abs=1e-6)
    assert efas.ergodic_capacity(10.0, 5.01) == pytest.approx(4.9405, abs=1e-3)
    rho_omega = 1e4
    gap = efas.ergodic_capacity(rho_omega, 1.0) - efas.ergodic_capacity_high_snr(rho_omega, 1.0)
    assert 0 < gap < 2e-3
    shape, scale = efas.zf_sinr_params(16, 4, 10.0, 5.01)
    assert shape == 13
    assert shape * scale == pytest.approx(162.825)
    approx, exact = efas.zf_sum_rate(16, 4, 10.0, 5.01)
    assert approx >= exact > 0


def test_monte_carlo_matches_closed_form():
    rho = 10.0
    om = efas.omega_eq(1.0, 0.01)
    est = efas.simulate_outage(10.0, 1.0, seed=3, trials=200000)
    p = efas.outage_probability(rho, om)
    assert abs(est["mean"] - p) <= 4 * math.sqrt(p * (1 - p) / est["n"])
    cap = efas.simulate_capacity(10.0, 1.0, seed=4, trials=200000)
    assert abs(cap["mean"] - efas.ergodic_capacity(rho, om)) <= 4 * cap["std_err"]


def test_zf_samples_follow_gamma_law():
    samples = efas.sample_zf_sinr(16, 4, 10.0, 5.0, seed=5, trials=20000)
    assert isinstance(samples, np.ndarray) and samples.shape == (20000,)
    shape, scale = efas.zf_sinr_params(16, 4, 10.0, efas.omega_eq(5.0, 0.01))
    d = efas.ks_statistic_gamma(samples, shape, scale)
    assert d <= 1.63 / math.sqrt(samples.size)


def test_zf_precoder_nulls_interference():
    rng = np.random.default_rng(11)
    h = (rng.standard_normal((16, 4)) + 1j * rng.standard_normal((16, 4))) / math.sqrt(2)
    w = efas.zf_precoder(h)
    g = h.conj().T @ w
    off = g - np.diag(np.diag(g))
    assert np.max(np.abs(off)) < 1e-10
    assert np.allclose(np.linalg.norm(w, axis=0), 1.0)
    with pytest.raises(efas.SingularChannelError):
        efas.zf_precoder(np.hstack([h[:, :1], h[:, :1], h[:, 2:]]))


def test_rng_is_deterministic():
    assert efas.derive_seed(0, 0) == 0xE220A8397B1DCDAF
    a = efas.sample_zf_sinr(8, 2, 5.0, 1.0, seed=9, trials=500, workers=1)
    b = efas.sample_zf_sinr(8, 2, 5.0, 1.0, seed=9, trials=500, workers=3)
    assert np.array_equal(a, b)


def test_run_produces_csv():
    text = efas.run("fig-outage", {"trials": "2000", "snr_db": "0,10", "omega_sw": "1"})
    lines = [line for line in text.splitlines() if line and not line.startswith("#")]
    assert lines[0].split(",")[0] == "snr_db"
    assert len(lines) == 3
    assert text == efas.run("fig-outage", {"trials": "2000", "snr_db": "0,10", "omega_sw": "1"})


def test_run_rejects_bad_config():
    with pytest.raises(efas.ConfigError):
        efas.run("fig-outage", {"no_such_key": "1"})
    with pytest.raises(efas.InfeasibleError):
        efas.run("fig-zf-dist", {"m": "4", "k": "8"})
