"""Statistical channel knowledge: expected inverse Grams and designs."""

import numpy as np
import pytest

from secfilt import (
    ChannelStats,
    design_scenario1_zf,
    design_scenario2_zf,
    design_zf_zf,
    expected_inverse_gram,
)
from secfilt.design_zf import Regime, secrecy_inactive_filter
from secfilt.exceptions import CollinearChannels, DegreesOfFreedom
from secfilt.uncertainty import sample_gaussian_channel

from conftest import H_EVE, H_MAIN, make_scenario


def test_expected_inverse_identity_covariance():
    got = expected_inverse_gram(ChannelStats(sigma=np.eye(2), n_rows=4))
    assert np.allclose(got, np.eye(2), atol=1e-12)


def test_expected_inverse_diagonal_covariance():
    got = expected_inverse_gram(ChannelStats(sigma=np.diag([2.0, 1.0]), n_rows=5))
    assert np.allclose(got, np.diag([0.25, 0.5]), atol=1e-12)


def test_expected_inverse_needs_degrees_of_freedom():
    with pytest.raises(DegreesOfFreedom):
        expected_inverse_gram(ChannelStats(sigma=np.eye(2), n_rows=3))


def test_expected_inverse_matches_monte_carlo():
    rng = np.random.Generator(np.random.Philox(key=[123, 0]))
    stats = ChannelStats(sigma=np.diag([2.0, 1.0]), n_rows=5)
    draws = 20000
    acc = np.zeros((2, 2), dtype=complex)
    for _ in range(draws):
        h = sample_gaussian_channel(stats, rng)
        acc += np.linalg.inv(h.conj().T @ h)
    emp = acc / draws
    expect = expected_inverse_gram(stats)
    rel = np.linalg.norm(emp - expect) / np.linalg.norm(expect)
    assert rel < 0.05


def test_scenario1_identical_statistics_rejected():
    stats = ChannelStats(sigma=np.diag([2.0, 1.0]), n_rows=4)
    with pytest.raises(CollinearChannels):
        design_scenario1_zf(stats, stats, 1.0, 0.5)


def test_scenario1_low_gamma_reduces_to_power_only():
    stats_m = ChannelStats(sigma=np.diag([4.0, 1.0]), n_rows=4)
    stats_e = ChannelStats(sigma=np.eye(2), n_rows=4)
    sol = design_scenario1_zf(stats_m, stats_e, 1.0, 0.01)
    assert sol.regime is Regime.SECRECY_INACTIVE
    m_eff = np.linalg.inv(expected_inverse_gram(stats_m))
    expect = secrecy_inactive_filter(m_eff, 1.0)
    assert np.allclose(sol.t.gram, expect.gram, atol=1e-10)


def test_scenario1_active_constraint_tight():
    stats_m = ChannelStats(sigma=np.diag([4.0, 1.0]), n_rows=4)
    stats_e = ChannelStats(sigma=np.eye(2), n_rows=4)
    sol = design_scenario1_zf(stats_m, stats_e, 1.0, 8.0)
    assert sol.regime is Regime.BOTH_ACTIVE
    b = expected_inverse_gram(stats_e)
    z = np.linalg.inv(sol.t.gram)
    assert float(np.trace(b @ z).real) == pytest.approx(8.0, rel=1e-6)


def test_scenario2_point_mass_reduces_to_deterministic():
    # choose the eavesdropper covariance so the expected inverse equals
    # the deterministic inverse Gram of the worked example
    gram_e = H_EVE.conj().T @ H_EVE
    stats_e = ChannelStats(sigma=gram_e, n_rows=4)  # denominator 1
    s = make_scenario(gamma=3.0)
    sol_u = design_scenario2_zf(H_MAIN, stats_e, 1.0, 3.0)
    sol_d = design_zf_zf(s)
    assert np.allclose(sol_u.t.h_t, sol_d.t.h_t, atol=1e-8)
    assert sol_u.mse_main == pytest.approx(sol_d.mse_main, rel=1e-10)


def test_scenario2_low_gamma_depends_only_on_main_channel():
    stats_e = ChannelStats(sigma=np.eye(2), n_rows=4)
    sol = design_scenario2_zf(H_MAIN, stats_e, 1.0, 0.01)
    gram_m = H_MAIN.conj().T @ H_MAIN
    expect = secrecy_inactive_filter(gram_m, 1.0)
    assert np.allclose(sol.t.gram, expect.gram, atol=1e-10)


def test_sampled_channel_row_covariance():
    rng = np.random.Generator(np.random.Philox(key=[7, 0]))
    stats = ChannelStats(sigma=np.diag([2.0, 1.0]), n_rows=4)
    acc = np.zeros((2, 2), dtype=complex)
    draws = 20000
    for _ in range(draws):
        h = sample_gaussian_channel(stats, rng)
        acc += h.conj().T @ h / stats.n_rows
    emp = acc / draws
    assert np.linalg.norm(emp - stats.sigma) / np.linalg.norm(stats.sigma) < 0.05
