"""Channel-uncertainty designs with a zero-forcing eavesdropper.

For channels whose rows are i.i.d. Gaussian with covariance Sigma, the
expected inverse Gram has the closed form Sigma^{-1} / (n - m - 1)
(the real-Wishart degrees-of-freedom convention).  Feeding these expected inverses (or a mix of
exact and expected ones) to the shared trace-design solver yields the two
partial-knowledge designs.
"""

import numpy as np

from .channel import ChannelStats
from .design_zf import solve_zspace
from .exceptions import CollinearChannels, DegreesOfFreedom, RankDeficient
from .linalg import as_complex_matrix, check_hermitian, eigh_pd, herm_power, RANK_TOL

COLLINEAR_TOL = 1e-8


def expected_inverse_gram(stats):
    """E{(H^H H)^{-1}} = Sigma^{-1} / (n - m - 1), for n - m - 1 > 0."""
    sigma = check_hermitian(stats.sigma)
    eigh_pd(sigma)
    m = sigma.shape[0]
    dof = stats.n_rows - m - 1
    if dof <= 0:
        raise DegreesOfFreedom(
            f"need n_rows > m + 1; got n_rows={stats.n_rows}, m={m}"
        )
    return herm_power(sigma, -1.0) / dof


def _check_not_collinear(a, b):
    m = a.shape[0]
    ratio = herm_power(a, -1.0) @ b
    dev = ratio - (np.trace(ratio) / m) * np.eye(m)
    if np.linalg.norm(dev) <= COLLINEAR_TOL * np.linalg.norm(ratio):
        raise CollinearChannels(
            "objective and constraint weight matrices are proportional"
        )


def design_scenario1_zf(stats_m, stats_e, p_avg, gamma):
    """Design from channel statistics on both sides.

    The Z-space problem min tr{A Z} s.t. tr{B Z} >= gamma uses
    A = E{(H_M^H H_M)^{-1}} and B = E{(H_E^H H_E)^{-1}}.
    """
    a = expected_inverse_gram(stats_m)
    b = expected_inverse_gram(stats_e)
    _check_not_collinear(a, b)
    return solve_zspace(a, b, p_avg, gamma)


def design_scenario2_zf(h_m, stats_e, p_avg, gamma):
    """Design from an exact main channel and eavesdropper statistics."""
    h_m = as_complex_matrix(h_m)
    s = np.linalg.svd(h_m, compute_uv=False)
    if h_m.shape[0] < h_m.shape[1] or s[-1] <= RANK_TOL * s[0]:
        raise RankDeficient("main channel is not full column rank")
    a = herm_power(h_m.conj().T @ h_m, -1.0)
    b = expected_inverse_gram(stats_e)
    _check_not_collinear(a, b)
    return solve_zspace(a, b, p_avg, gamma)


def sample_gaussian_channel(stats, rng):
    """Draw one channel with i.i.d. N(0, Sigma) rows.

    Rows are real Gaussian: the n - m - 1 denominator of
    expected_inverse_gram is the real-Wishart convention, and sampling
    must follow the same convention for the two to agree.
    """
    sigma_sqrt = herm_power(stats.sigma, 0.5)
    m = stats.sigma.shape[0]
    return rng.standard_normal((stats.n_rows, m)) @ sigma_sqrt
