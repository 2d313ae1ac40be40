"""Closed-form receive filters and analytic performance metrics.

Zero-forcing and Wiener receivers, their mean-squared errors, the transmit
power of a filter, and the achievable secrecy rate of a transmit design.
"""

import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionMismatch, RankDeficient
from .linalg import as_complex_matrix, eigh_pd, pseudo_inverse


class ReceiverKind(enum.Enum):
    ZERO_FORCING = "zf"
    WIENER = "wiener"


@dataclass(frozen=True)
class TransmitFilter:
    """An m x m transmit matrix with its Gram matrix G = H_T H_T^H."""

    h_t: np.ndarray
    gram: np.ndarray = field(init=False)

    def __post_init__(self):
        h_t = as_complex_matrix(self.h_t)
        if h_t.shape[0] != h_t.shape[1]:
            raise DimensionMismatch(f"transmit filter is {h_t.shape}, not square")
        object.__setattr__(self, "h_t", h_t)
        gram = h_t @ h_t.conj().T
        eigh_pd(gram)
        object.__setattr__(self, "gram", gram)


def zf_receive(h, t):
    """Zero-forcing receiver (H H_T)^+ for the cascade of channel and filter."""
    cascade = as_complex_matrix(h) @ t.h_t
    return pseudo_inverse(cascade)


def wiener_receive(h, t):
    """Linear MMSE receiver H_T^H H^H (I + H G H^H)^{-1}.

    Unlike the zero-forcing receiver this needs no rank condition: the
    regularized inverse always exists.
    """
    h = as_complex_matrix(h)
    if h.shape[1] != t.h_t.shape[0]:
        raise DimensionMismatch(
            f"channel has {h.shape[1]} columns but filter is {t.h_t.shape}"
        )
    n = h.shape[0]
    return t.h_t.conj().T @ h.conj().T @ np.linalg.inv(
        np.eye(n) + h @ t.gram @ h.conj().T
    )


def mse_zf(h, t):
    """MSE of the zero-forcing receiver: tr{(H_T^H H^H H H_T)^{-1}}."""
    cascade = as_complex_matrix(h) @ t.h_t
    s = np.linalg.svd(cascade, compute_uv=False)
    if cascade.shape[0] < cascade.shape[1] or s[-1] <= 1e-10 * s[0]:
        raise RankDeficient("channel-filter cascade is not full column rank")
    return float(np.sum(1.0 / s**2))


def mse_wiener(h, t):
    """MSE of the Wiener receiver: tr{(I + H^H H G)^{-1}}."""
    h = as_complex_matrix(h)
    if h.shape[1] != t.h_t.shape[0]:
        raise DimensionMismatch(
            f"channel has {h.shape[1]} columns but filter is {t.h_t.shape}"
        )
    m = t.h_t.shape[0]
    return float(
        np.trace(np.linalg.inv(np.eye(m) + h.conj().T @ h @ t.gram)).real
    )


def power_used(t):
    """Transmit power tr{G}."""
    return float(np.trace(t.gram).real)


def achievable_secrecy_rate(s, t):
    """Nonnegative log-det rate difference between the two channels, in bits."""
    h_m = as_complex_matrix(s.h_m)
    h_e = as_complex_matrix(s.h_e)

    def logdet_rate(h):
        n = h.shape[0]
        sign, ld = np.linalg.slogdet(np.eye(n) + h @ t.gram @ h.conj().T)
        return ld / np.log(2.0)

    return max(0.0, logdet_rate(h_m) - logdet_rate(h_e))
