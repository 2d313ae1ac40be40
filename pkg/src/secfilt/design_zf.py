"""Optimal transmit filter with zero-forcing receivers on both sides.

The trace-constrained problem is solved in the inverse-Gram variable
Z = (H_T H_T^H)^{-1}:

    min tr{A Z}   s.t.  tr{B Z} >= gamma,  tr{Z^{-1}} <= P,  Z > 0

with A and B the inverse channel Grams.  The secrecy multiplier nu is
recovered by bisecting the derivative of the concave single-variable
Lagrange dual over [0, lambda_min(B^{-1/2} A B^{-1/2})]; the power
multiplier mu then follows in closed form.  The same machinery serves the
channel-uncertainty designs, which only swap in different A and B.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .channel import gram_pair, validate
from .exceptions import BisectionFailed, NonPositivePower, OutOfInterval
from .filters import TransmitFilter
from .linalg import PD_FLOOR, check_hermitian, eigh_pd, herm_power

BISECT_MAX_ITER = 200
BISECT_REL_WIDTH = 1e-12


class Regime(enum.Enum):
    SECRECY_INACTIVE = "SecrecyInactive"
    BOTH_ACTIVE = "BothActive"
    POWER_INACTIVE = "PowerInactive"


@dataclass(frozen=True)
class DesignSolution:
    """A solved transmit filter with its KKT certificate."""

    t: TransmitFilter
    regime: Regime
    nu: float
    mu: float
    mse_main: float
    mse_eve: float
    power: float
    kkt_residual: float


def secrecy_inactive_filter(m_gram, p_avg):
    """Power-only optimum: sqrt(P / tr{M^{-1/2}}) * M^{-1/4}."""
    if not p_avg > 0:
        raise NonPositivePower(f"p_avg={p_avg} must be positive")
    m_gram = check_hermitian(m_gram)
    tr_isqrt = float(np.trace(herm_power(m_gram, -0.5)).real)
    h_t = np.sqrt(p_avg / tr_isqrt) * herm_power(m_gram, -0.25)
    return TransmitFilter(h_t=h_t)


def _shifted_spectrum(a, b, nu):
    """Eigendecomposition of W = A - nu*B, with negative-part guard."""
    w_mat = a - nu * b
    w_mat = 0.5 * (w_mat + w_mat.conj().T)
    vals, vecs = np.linalg.eigh(w_mat)
    scale = max(abs(vals[-1]), 1e-300)
    if vals[0] < -PD_FLOOR * scale:
        raise OutOfInterval(
            f"A - nu*B has negative eigenvalue {vals[0]} at nu={nu}"
        )
    return np.clip(vals, 0.0, None), vecs


def _dual_value(a, b, nu, p_avg, gamma):
    vals, _ = _shifted_spectrum(a, b, nu)
    tr_sqrt = float(np.sum(np.sqrt(vals)))
    return tr_sqrt**2 / p_avg + nu * gamma


def _dual_derivative(a, b, nu, p_avg, gamma):
    """d/dnu of the reduced dual; decreasing in nu (the dual is concave)."""
    vals, vecs = _shifted_spectrum(a, b, nu)
    tr_sqrt = float(np.sum(np.sqrt(vals)))
    # tr{W^{-1/2} B} through the eigenbasis of W; singular modes push the
    # derivative to -inf, which only steers the bisection downward.
    b_diag = np.einsum("ij,jk,ki->i", vecs.conj().T, b, vecs).real
    with np.errstate(divide="ignore"):
        tr_invsqrt_b = float(np.sum(b_diag / np.sqrt(vals)))
    return gamma - tr_sqrt * tr_invsqrt_b / p_avg


def _nu_upper_bound(a, b):
    """Largest nu keeping A - nu*B positive semidefinite."""
    b_isqrt = herm_power(b, -0.5)
    vals, _ = eigh_pd(b_isqrt @ a @ b_isqrt)
    return float(vals[-1])


def solve_zspace(a, b, p_avg, gamma):
    """Solve the inverse-Gram trace design for weight matrices (A, B)."""
    a = check_hermitian(a)
    b = check_hermitian(b)
    eigh_pd(a)
    eigh_pd(b)

    tr_a_sqrt = float(np.trace(herm_power(a, 0.5)).real)
    threshold = tr_a_sqrt / p_avg * float(
        np.trace(b @ herm_power(a, -0.5)).real
    )

    if threshold > gamma:
        nu = 0.0
        regime = Regime.SECRECY_INACTIVE
    else:
        regime = Regime.BOTH_ACTIVE
        nu_hi = _nu_upper_bound(a, b)
        lo, hi = 0.0, nu_hi
        d_lo = _dual_derivative(a, b, lo, p_avg, gamma)
        if d_lo < 0:
            raise BisectionFailed(
                "dual derivative negative at nu=0 despite active threshold"
            )
        for _ in range(BISECT_MAX_ITER):
            mid = 0.5 * (lo + hi)
            if _dual_derivative(a, b, mid, p_avg, gamma) > 0:
                lo = mid
            else:
                hi = mid
            if hi - lo <= BISECT_REL_WIDTH * nu_hi:
                break
        nu = 0.5 * (lo + hi)

    vals, vecs = _shifted_spectrum(a, b, nu)
    if vals[0] <= 0:
        raise BisectionFailed("shifted matrix collapsed to singular at nu*")
    tr_sqrt = float(np.sum(np.sqrt(vals)))
    mu = (tr_sqrt / p_avg) ** 2

    # Z = (tr{W^{1/2}}/P) W^{-1/2}; the canonical filter is the PSD fourth
    # root G^{1/2} with G = Z^{-1}.
    g = (p_avg / tr_sqrt) * (vecs * np.sqrt(vals)) @ vecs.conj().T
    h_t = (vecs * (p_avg / tr_sqrt * np.sqrt(vals)) ** 0.5) @ vecs.conj().T
    t = TransmitFilter(h_t=h_t)

    z = (tr_sqrt / p_avg) * (vecs / np.sqrt(vals)) @ vecs.conj().T
    mse_main = float(np.trace(a @ z).real)
    mse_eve = float(np.trace(b @ z).real)
    z_inv2 = np.linalg.matrix_power(np.linalg.inv(z), 2)
    residual = np.linalg.norm(a - nu * b - mu * z_inv2) / np.linalg.norm(a)

    return DesignSolution(
        t=t,
        regime=regime,
        nu=nu,
        mu=mu,
        mse_main=mse_main,
        mse_eve=mse_eve,
        power=float(np.trace(g).real),
        kkt_residual=float(residual),
    )


def dual_objective(nu, s):
    """Reduced dual of the zero-forcing design at multiplier nu."""
    gram_m, gram_e = gram_pair(s)
    a = herm_power(gram_m, -1.0)
    b = herm_power(gram_e, -1.0)
    return _dual_value(a, b, nu, s.p_avg, s.gamma)


def design_zf_zf(s):
    """Optimal transmit filter when both receivers are zero-forcing."""
    validate(s)
    gram_m, gram_e = gram_pair(s)
    a = herm_power(gram_m, -1.0)
    b = herm_power(gram_e, -1.0)
    return solve_zspace(a, b, s.p_avg, s.gamma)
