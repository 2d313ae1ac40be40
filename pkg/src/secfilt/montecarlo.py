"""Stochastic validation engine.

Empirical MSE under ZF/Wiener receivers, BPSK bit error rates with a
slicer, finite-alphabet posterior-mean (nonlinear estimator) comparisons,
and channel-estimation-error robustness experiments.

All randomness comes from counter-based Philox streams keyed by
(seed, stream index), so trials and realizations are reproducible and can
be distributed across workers without coordination.  The posterior-mean
kernel is compiled when the extension built from _cme_core.pyx is
available; otherwise the numpy fallback in _cme_numpy is used.
"""

import itertools
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from . import _cme_numpy
from .channel import WiretapScenario, validate
from .design_zf import design_zf_zf
from .exceptions import AlphabetTooLarge, InputError, SecrecyDesignError
from .filters import (
    ReceiverKind,
    mse_wiener,
    mse_zf,
    wiener_receive,
    zf_receive,
)

try:
    from . import _cme_core as _cme_backend

    CME_BACKEND = "cython"
except ImportError:  # extension not built
    _cme_backend = _cme_numpy
    CME_BACKEND = "numpy"

MAX_ALPHABET_COMBINATIONS = 10**6


def _rng(seed, stream=0):
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


@dataclass(frozen=True)
class Constellation:
    """A finite real symbol alphabet with unit average energy."""

    kind: str
    points: np.ndarray

    @staticmethod
    def bpsk():
        return Constellation(kind="bpsk", points=np.array([-1.0, 1.0]))

    @staticmethod
    def pam16():
        levels = np.arange(-15.0, 16.0, 2.0)
        return Constellation(kind="pam16", points=levels / np.sqrt(85.0))


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    trials: int
    seed: int


def _complex_gaussian(rng, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def _receiver(h, t, rx):
    if rx is ReceiverKind.ZERO_FORCING:
        return zf_receive(h, t)
    return wiener_receive(h, t)


def simulate_mse(s, t, rx, side, trials, seed, noise_scale=1.0):
    """Empirical MSE of a linear receiver over Gaussian inputs and noise.

    side is "main" or "eve"; rx selects the receiver on that side.
    """
    if side not in ("main", "eve"):
        raise InputError(f"side must be 'main' or 'eve', got {side!r}")
    h = s.h_m if side == "main" else s.h_e
    r = _receiver(h, t, rx)
    rng = _rng(seed)
    m = t.h_t.shape[0]
    x = _complex_gaussian(rng, (trials, m))
    noise = noise_scale * _complex_gaussian(rng, (trials, h.shape[0]))
    y = x @ (h @ t.h_t).T + noise
    err = x - y @ r.T
    sq = np.sum(err.real**2 + err.imag**2, axis=1)
    return McEstimate(
        mean=float(sq.mean()),
        std_error=float(sq.std(ddof=1) / np.sqrt(trials)),
        trials=trials,
        seed=seed,
    )


def _candidate_grid(points, m):
    n_comb = len(points) ** m
    if n_comb > MAX_ALPHABET_COMBINATIONS:
        raise AlphabetTooLarge(
            f"{len(points)}^{m} = {n_comb} candidate vectors exceed the cap"
        )
    return np.array(list(itertools.product(points, repeat=m)))


def cme_estimate(y, h_eff, c):
    """Posterior-mean estimate of the symbol vector from one observation.

    Weights candidate vectors x by exp(-||y - H x||^2), the Gaussian
    likelihood under unit-covariance circular complex noise.
    """
    y = np.asarray(y, dtype=complex).reshape(1, -1)
    h_eff = np.asarray(h_eff, dtype=complex)
    candidates = _candidate_grid(c.points, h_eff.shape[1])
    mixed = np.ascontiguousarray(candidates @ h_eff.T)
    return _cme_backend.posterior_means(
        np.ascontiguousarray(y), mixed, np.ascontiguousarray(candidates)
    )[0]


def simulate_cme_mse(s, t, c, trials, seed):
    """Empirical eavesdropper MSE under the exact posterior-mean estimator."""
    h_eff = s.h_e @ t.h_t
    m = t.h_t.shape[0]
    candidates = _candidate_grid(c.points, m)
    mixed = np.ascontiguousarray(candidates @ h_eff.T)
    rng = _rng(seed)
    idx = rng.integers(0, len(c.points), size=(trials, m))
    x = c.points[idx]
    noise = _complex_gaussian(rng, (trials, h_eff.shape[0]))
    y = x @ h_eff.T + noise
    x_hat = _cme_backend.posterior_means(
        np.ascontiguousarray(y), mixed, np.ascontiguousarray(candidates)
    )
    sq = np.sum((x - x_hat) ** 2, axis=1)
    return McEstimate(
        mean=float(sq.mean()),
        std_error=float(sq.std(ddof=1) / np.sqrt(trials)),
        trials=trials,
        seed=seed,
    )


def simulate_ber_bpsk(s, sol, rx_eve, trials, seed):
    """BPSK bit error rates with a sign slicer on both channels."""
    t = sol.t
    m = t.h_t.shape[0]
    r_main = zf_receive(s.h_m, t)
    r_eve = _receiver(s.h_e, t, rx_eve)
    rng = _rng(seed)
    x = rng.choice([-1.0, 1.0], size=(trials, m))

    def ber_side(h, r):
        noise = _complex_gaussian(rng, (trials, h.shape[0]))
        y = x @ (h @ t.h_t).T + noise
        decided = np.sign((y @ r.T).real)
        frac = np.mean(decided != x, axis=1)
        return McEstimate(
            mean=float(frac.mean()),
            std_error=float(frac.std(ddof=1) / np.sqrt(trials)),
            trials=trials,
            seed=seed,
        )

    return ber_side(s.h_m, r_main), ber_side(s.h_e, r_eve)


class PerturbedResult(NamedTuple):
    mse_main: McEstimate
    mse_eve: McEstimate
    rejected: int


def perturbed_design_experiment(
    s, design_kind, sigma_m, sigma_e, realizations, seed
):
    """Design on noisy channel estimates, evaluate on the true channels.

    Each realization draws complex perturbations with per-entry variance
    sigma^2 (independent real/imaginary parts of variance sigma^2/2),
    designs the filter on H + Phi, and evaluates the analytic MSEs against
    the unperturbed channels.  Realizations whose perturbed design is
    invalid are resampled and counted.
    """
    from .design_wiener import design_zf_wiener

    if design_kind not in ("zf_zf", "zf_wiener"):
        raise InputError(f"unknown design kind {design_kind!r}")
    designer = design_zf_zf if design_kind == "zf_zf" else design_zf_wiener
    eve_metric = mse_zf if design_kind == "zf_zf" else mse_wiener

    main_vals = np.empty(realizations)
    eve_vals = np.empty(realizations)
    rejected = 0
    done = 0
    stream = 0
    while done < realizations:
        rng = _rng(seed, stream=stream)
        stream += 1
        phi_m = sigma_m * _complex_gaussian(rng, s.h_m.shape)
        phi_e = sigma_e * _complex_gaussian(rng, s.h_e.shape)
        perturbed = replace(s, h_m=s.h_m + phi_m, h_e=s.h_e + phi_e)
        try:
            sol = designer(validate(perturbed))
            main_vals[done] = mse_zf(s.h_m, sol.t)
            eve_vals[done] = eve_metric(s.h_e, sol.t)
        except SecrecyDesignError:
            rejected += 1
            continue
        done += 1

    def estimate(vals):
        return McEstimate(
            mean=float(vals.mean()),
            std_error=float(vals.std(ddof=1) / np.sqrt(realizations)),
            trials=realizations,
            seed=seed,
        )

    return PerturbedResult(
        mse_main=estimate(main_vals), mse_eve=estimate(eve_vals), rejected=rejected
    )
