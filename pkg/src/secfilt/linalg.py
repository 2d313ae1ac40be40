"""Dense complex linear-algebra kernels.

Hermitian fractional powers, pseudo-inverses, simultaneous diagonalization
of two positive-definite matrices, and generalized eigenvalue extremes.
Everything here works on small (m <= ~8) matrices via full
eigendecompositions, so the exact spectra can be reused by the solvers.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionMismatch, NotPositiveDefinite, RankDeficient

PD_FLOOR = 1e-12
RANK_TOL = 1e-10
SYM_TOL = 1e-8


def as_complex_matrix(a):
    """Return a 2-D complex ndarray copy of `a`, rejecting non-finite entries."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise NotPositiveDefinite("matrix contains non-finite entries")
    return a


def check_hermitian(a, tol=SYM_TOL):
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix is {a.shape}, not square")
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > tol * max(scale, 1e-300):
        raise NotPositiveDefinite("matrix is not Hermitian")
    return 0.5 * (a + a.conj().T)


def eigh_pd(a, pd_floor=PD_FLOOR):
    """Eigendecomposition of a Hermitian positive-definite matrix.

    Returns (w, v) with eigenvalues in descending order.  Raises
    NotPositiveDefinite when any eigenvalue falls at or below
    pd_floor times the largest one.
    """
    a = check_hermitian(a)
    w, v = np.linalg.eigh(a)
    w, v = w[::-1], v[:, ::-1]
    if w[0] <= 0 or w[-1] <= pd_floor * w[0]:
        raise NotPositiveDefinite(
            f"eigenvalues {w} fail the positive-definiteness floor"
        )
    return w, v


def herm_power(a, p, pd_floor=PD_FLOOR):
    """Fractional power U diag(w**p) U^H of a Hermitian PD matrix."""
    if not np.isfinite(p):
        raise ValueError("power must be finite")
    w, v = eigh_pd(a, pd_floor=pd_floor)
    return (v * w**p) @ v.conj().T


def pseudo_inverse(a, rank_tol=RANK_TOL):
    """Moore-Penrose pseudo-inverse of a full-column-rank matrix."""
    a = as_complex_matrix(a)
    s = np.linalg.svd(a, compute_uv=False)
    if a.shape[0] < a.shape[1] or s[-1] <= rank_tol * s[0]:
        raise RankDeficient(
            f"matrix of shape {a.shape} is not full column rank "
            f"(singular values {s})"
        )
    return np.linalg.pinv(a)


@dataclass(frozen=True)
class SimDiag:
    """Congruence transform C with the two diagonal spectra it induces.

    C^H M C = diag(lambda_m) and C^H E C = diag(lambda_e).  The chosen
    construction normalizes lambda_m to all-ones; the ratios
    lambda_e/lambda_m are the generalized eigenvalues of (E, M) and are
    invariant to any positive rescaling of the columns of C.
    """

    c: np.ndarray
    lambda_m: np.ndarray
    lambda_e: np.ndarray


def simultaneous_diagonalize(m, e):
    """Simultaneously diagonalize two Hermitian PD matrices of equal size.

    Uses C = M^{-1/2} U where U are the eigenvectors of M^{-1/2} E M^{-1/2},
    so the induced main-channel spectrum is the identity.  Eigenvalues come
    out in descending order of lambda_e.
    """
    m = check_hermitian(m)
    e = check_hermitian(e)
    if m.shape != e.shape:
        raise DimensionMismatch(f"shapes {m.shape} and {e.shape} differ")
    m_isqrt = herm_power(m, -0.5)
    w, u = eigh_pd(m_isqrt @ e @ m_isqrt)
    c = m_isqrt @ u
    return SimDiag(c=c, lambda_m=np.ones_like(w), lambda_e=w)


def min_generalized_eigenvalue(m, e):
    """Smallest eigenvalue of E^{1/2} M^{-1} E^{1/2} (= smallest of M^{-1}E)."""
    e_sqrt = herm_power(e, 0.5)
    m_inv = herm_power(m, -1.0)
    w, _ = eigh_pd(e_sqrt @ m_inv @ e_sqrt)
    return float(w[-1])
