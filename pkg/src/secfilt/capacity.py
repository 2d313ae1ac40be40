"""Numeric secrecy-capacity reference for degraded scenarios.

Maximizes the log-det rate difference over transmit covariances Q >= 0
with tr{Q} <= P by projected gradient ascent with Armijo backtracking and
random restarts.  In the degraded case the objective is concave, so the
multistart estimate is a capacity value up to the optimizer tolerance.
Non-degraded inputs are rejected: the objective is non-concave there and
a spurious "capacity" would be worse than no answer.
"""

import numpy as np

from .exceptions import NotDegraded
from .linalg import as_complex_matrix

OPT_TOL = 1e-4
RESTARTS = 20
MAX_ITER = 2000
LN2 = np.log(2.0)


def _check_degraded(h_m, h_e, tol=1e-10):
    gram_m = h_m.conj().T @ h_m
    gram_e = h_e.conj().T @ h_e
    w = np.linalg.eigvalsh(gram_m - gram_e)
    if w[0] < -tol * max(abs(w[-1]), 1.0):
        raise NotDegraded(
            "main-channel Gram does not dominate the eavesdropper Gram"
        )


def _rate(h_m, h_e, q):
    def term(h):
        n = h.shape[0]
        _, ld = np.linalg.slogdet(np.eye(n) + h @ q @ h.conj().T)
        return ld / LN2

    return term(h_m) - term(h_e)


def _gradient(h_m, h_e, q):
    def term(h):
        n = h.shape[0]
        inv = np.linalg.inv(np.eye(n) + h @ q @ h.conj().T)
        return h.conj().T @ inv @ h / LN2

    return term(h_m) - term(h_e)


def _project(q, p_avg):
    """Euclidean projection onto {Q >= 0, tr{Q} <= P}."""
    q = 0.5 * (q + q.conj().T)
    w, v = np.linalg.eigh(q)
    w = np.clip(w, 0.0, None)
    total = w.sum()
    if total > p_avg:
        # shift-and-clip projection of the eigenvalues onto the capped simplex
        lo, hi = 0.0, w.max()
        for _ in range(100):
            shift = 0.5 * (lo + hi)
            if np.clip(w - shift, 0.0, None).sum() > p_avg:
                lo = shift
            else:
                hi = shift
        w = np.clip(w - hi, 0.0, None)
    return (v * w) @ v.conj().T


def secrecy_capacity_degraded(h_m, h_e, p_avg, restarts=RESTARTS, seed=0):
    """Capacity estimate of a degraded pair of channels at power budget P."""
    h_m = as_complex_matrix(h_m)
    h_e = as_complex_matrix(h_e)
    _check_degraded(h_m, h_e)
    m = h_m.shape[1]
    rng = np.random.Generator(np.random.Philox(key=[seed, 0]))

    best = 0.0
    for restart in range(restarts):
        if restart == 0:
            q = np.eye(m) * (p_avg / m)
        else:
            g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
            q = _project(g @ g.conj().T, p_avg)
        value = _rate(h_m, h_e, q)
        step = 1.0
        for _ in range(MAX_ITER):
            grad = _gradient(h_m, h_e, q)
            improved = False
            while step > 1e-14:
                q_new = _project(q + step * grad, p_avg)
                v_new = _rate(h_m, h_e, q_new)
                if v_new > value + 1e-14:
                    q, value = q_new, v_new
                    improved = True
                    step *= 1.5
                    break
                step *= 0.5
            if not improved:
                break
        best = max(best, value)
    return float(max(best, 0.0))
