# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled posterior-mean kernel for finite-alphabet estimation.

For each observation y, weights every candidate symbol vector x by
exp(-||y - Hx||^2) and returns the normalized weighted mean of the
candidates.  This is the hot inner loop of the nonlinear-estimator
simulations; a numpy fallback with identical semantics lives in
_cme_numpy.py.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp

cnp.import_array()


def posterior_means(
    cnp.complex128_t[:, ::1] obs,
    cnp.complex128_t[:, ::1] mixed,
    cnp.float64_t[:, ::1] candidates,
):
    """Posterior means for a batch of observations.

    obs:        (trials, n) received vectors
    mixed:      (K, n) candidate vectors pushed through the channel, Hx
    candidates: (K, m) the candidate symbol vectors themselves
    returns:    (trials, m) posterior-mean estimates
    """
    cdef Py_ssize_t trials = obs.shape[0]
    cdef Py_ssize_t n = obs.shape[1]
    cdef Py_ssize_t nk = mixed.shape[0]
    cdef Py_ssize_t m = candidates.shape[1]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((trials, m))
    cdef cnp.float64_t[:, ::1] out_v = out
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dist = np.empty(nk)
    cdef cnp.float64_t[::1] dist_v = dist
    cdef Py_ssize_t t, k, i, j
    cdef double d, re, im, best, w, wsum

    for t in range(trials):
        best = 1e300
        for k in range(nk):
            d = 0.0
            for i in range(n):
                re = obs[t, i].real - mixed[k, i].real
                im = obs[t, i].imag - mixed[k, i].imag
                d += re * re + im * im
            dist_v[k] = d
            if d < best:
                best = d
        wsum = 0.0
        for k in range(nk):
            w = exp(best - dist_v[k])
            wsum += w
            for j in range(m):
                out_v[t, j] += w * candidates[k, j]
        for j in range(m):
            out_v[t, j] /= wsum
    return out
