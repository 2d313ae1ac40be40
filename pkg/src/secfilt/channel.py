"""Wiretap scenario definition, validation and noise pre-whitening.

A scenario bundles the main and eavesdropper channel matrices with the
power budget and the eavesdropper MSE floor.  Channels with colored noise
are whitened (left-multiplied by the inverse square root of the noise
covariance) before validation.
"""

import json
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    BadDimension,
    CollinearChannels,
    DimensionMismatch,
    NonPositiveGamma,
    NonPositivePower,
    RankDeficient,
)
from .linalg import RANK_TOL, as_complex_matrix, check_hermitian, eigh_pd, herm_power

COLLINEAR_TOL = 1e-8


@dataclass(frozen=True)
class WiretapScenario:
    """One design instance: channels, power budget and secrecy floor."""

    h_m: np.ndarray
    h_e: np.ndarray
    p_avg: float
    gamma: float

    @property
    def m(self):
        return self.h_m.shape[1]


@dataclass(frozen=True)
class ChannelStats:
    """Row covariance and antenna count of a random Gaussian channel."""

    sigma: np.ndarray
    n_rows: int


def _check_full_column_rank(h, name):
    s = np.linalg.svd(h, compute_uv=False)
    if s[-1] <= RANK_TOL * s[0]:
        raise RankDeficient(f"{name} is not full column rank")


def validate(s):
    """Check all scenario invariants and return the scenario unchanged."""
    h_m = as_complex_matrix(s.h_m)
    h_e = as_complex_matrix(s.h_e)
    m = h_m.shape[1]
    if h_e.shape[1] != m:
        raise DimensionMismatch(
            f"channel column counts differ: {m} vs {h_e.shape[1]}"
        )
    if h_m.shape[0] < m:
        raise BadDimension(f"main channel is {h_m.shape}: needs rows >= cols")
    if h_e.shape[0] < m:
        raise BadDimension(f"eavesdropper channel is {h_e.shape}: needs rows >= cols")
    if not s.p_avg > 0:
        raise NonPositivePower(f"p_avg={s.p_avg} must be positive")
    if not s.gamma > 0:
        raise NonPositiveGamma(f"gamma={s.gamma} must be positive")
    _check_full_column_rank(h_m, "main channel")
    _check_full_column_rank(h_e, "eavesdropper channel")

    # Collinearity test on M^{-1}E: proportional channels make it a scalar
    # multiple of the identity, which is basis independent.
    gram_m, gram_e = gram_pair(s)
    ratio = herm_power(gram_m, -1.0) @ gram_e
    dev = ratio - (np.trace(ratio) / m) * np.eye(m)
    if np.linalg.norm(dev) <= COLLINEAR_TOL * np.linalg.norm(ratio):
        raise CollinearChannels(
            "eavesdropper channel is a scalar multiple of the main channel"
        )
    return s


def whiten(h_raw, noise_cov):
    """Pre-whiten a channel: Sigma_N^{-1/2} @ H."""
    h_raw = as_complex_matrix(h_raw)
    noise_cov = check_hermitian(noise_cov)
    if noise_cov.shape[0] != h_raw.shape[0]:
        raise DimensionMismatch(
            f"noise covariance is {noise_cov.shape} but channel has "
            f"{h_raw.shape[0]} rows"
        )
    return herm_power(noise_cov, -0.5) @ h_raw


def gram_pair(s):
    """The Gram matrices (H_M^H H_M, H_E^H H_E), checked positive definite."""
    h_m = as_complex_matrix(s.h_m)
    h_e = as_complex_matrix(s.h_e)
    gram_m = h_m.conj().T @ h_m
    gram_e = h_e.conj().T @ h_e
    eigh_pd(gram_m)
    eigh_pd(gram_e)
    return gram_m, gram_e


def is_degraded(s, tol=1e-10):
    """True when the eavesdropper channel Gram is dominated by the main one."""
    gram_m, gram_e = gram_pair(s)
    w = np.linalg.eigvalsh(gram_m - gram_e)
    return bool(w[0] >= -tol * max(abs(w[-1]), 1.0))


def _matrix_from_json(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def matrix_to_json(a):
    a = np.asarray(a, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in a]


def scenario_from_dict(data):
    """Build a validated scenario from the JSON schema.

    Expected keys: h_m, h_e (matrices of [re, im] pairs), p_avg, gamma,
    and optionally noise_cov_m / noise_cov_e which trigger pre-whitening
    before validation.
    """
    h_m = _matrix_from_json(data["h_m"])
    h_e = _matrix_from_json(data["h_e"])
    if "noise_cov_m" in data:
        h_m = whiten(h_m, _matrix_from_json(data["noise_cov_m"]))
    if "noise_cov_e" in data:
        h_e = whiten(h_e, _matrix_from_json(data["noise_cov_e"]))
    scenario = WiretapScenario(
        h_m=h_m, h_e=h_e, p_avg=float(data["p_avg"]), gamma=float(data["gamma"])
    )
    return validate(scenario)


def load_scenario(path):
    with open(path) as fh:
        return scenario_from_dict(json.load(fh))
