"""Design against a Wiener eavesdropper: thresholds and three regimes."""

import numpy as np
import pytest

from secfilt import (
    WiretapScenario,
    design_zf_wiener,
    max_gamma_power_limited,
    min_power_secrecy_limited,
    power_limited_filter,
    secrecy_limited_filter,
)
from secfilt.design_zf import Regime, secrecy_inactive_filter
from secfilt.exceptions import GammaTooLarge, WrongRegime
from secfilt.filters import mse_wiener, power_used

from conftest import make_scenario


def test_power_limited_threshold_closed_form():
    got = max_gamma_power_limited(make_scenario())
    assert got == pytest.approx(0.8284518828451883, rel=1e-10)


def test_diagonal_example_exact():
    # grams diag(4,1) and identity with gamma=1.5 give the transmit Gram
    # diag(0.2, 0.5) and minimum power 0.7 exactly
    s = WiretapScenario(
        h_m=np.diag([2.0, 1.0]), h_e=np.eye(2), p_avg=1.0, gamma=1.5
    )
    t = secrecy_limited_filter(s)
    assert np.allclose(t.gram, np.diag([0.2, 0.5]), atol=1e-12)
    assert min_power_secrecy_limited(s) == pytest.approx(0.7, rel=1e-12)


def test_low_gamma_matches_power_only_filter():
    s = make_scenario(gamma=0.5)
    sol = design_zf_wiener(s)
    assert sol.regime is Regime.SECRECY_INACTIVE
    expect = secrecy_inactive_filter(s.h_m.conj().T @ s.h_m, s.p_avg)
    assert np.allclose(sol.t.gram, expect.gram, atol=1e-12)


def test_high_gamma_secrecy_only_regime():
    sol = design_zf_wiener(make_scenario(gamma=1.2))
    assert sol.regime is Regime.POWER_INACTIVE
    assert sol.mse_eve == pytest.approx(1.2, rel=1e-10)
    assert sol.power <= 1.0 + 1e-10
    assert sol.mu == 0.0
    assert sol.kkt_residual <= 1e-8


def test_middle_regime_both_constraints_tight():
    sol = design_zf_wiener(make_scenario(gamma=0.9))
    assert sol.regime is Regime.BOTH_ACTIVE
    assert sol.mse_eve == pytest.approx(0.9, rel=1e-7)
    assert sol.power == pytest.approx(1.0, rel=1e-8)
    assert sol.kkt_residual <= 1e-6
    assert sol.nu > 0 and sol.mu > 0


def test_gamma_at_least_stream_count_rejected():
    with pytest.raises(GammaTooLarge):
        design_zf_wiener(make_scenario(gamma=2.0))


def test_wrong_regime_guards():
    with pytest.raises(WrongRegime):
        power_limited_filter(make_scenario(gamma=1.2))
    with pytest.raises(WrongRegime):
        secrecy_limited_filter(make_scenario(gamma=0.9))


def test_mse_main_monotone_in_gamma():
    prev = None
    for g in np.linspace(0.2, 1.9, 30):
        sol = design_zf_wiener(make_scenario(gamma=float(g)))
        if prev is not None:
            assert sol.mse_main >= prev - 1e-9
        prev = sol.mse_main


def test_secrecy_floor_always_met():
    for g in [0.3, 0.85, 0.9, 1.1, 1.5, 1.9]:
        sol = design_zf_wiener(make_scenario(gamma=g))
        assert sol.mse_eve >= g * (1 - 1e-6)


def test_secrecy_only_filter_hits_gamma_exactly():
    for g in [1.2, 1.5, 1.8]:
        s = make_scenario(gamma=g)
        t = secrecy_limited_filter(s)
        assert mse_wiener(s.h_e, t) == pytest.approx(g, abs=1e-10)
        assert power_used(t) <= s.p_avg + 1e-10
