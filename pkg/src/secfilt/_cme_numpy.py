"""Pure-numpy fallback for the posterior-mean kernel.

Same contract as the compiled _cme_core.posterior_means.  Works in chunks
of trials to keep the (chunk, K) distance matrix small.
"""

import numpy as np

_CHUNK = 2048


def posterior_means(obs, mixed, candidates):
    obs = np.ascontiguousarray(obs)
    mixed = np.ascontiguousarray(mixed)
    candidates = np.ascontiguousarray(candidates)
    trials = obs.shape[0]
    out = np.empty((trials, candidates.shape[1]))
    for start in range(0, trials, _CHUNK):
        chunk = obs[start : start + _CHUNK]
        diff = chunk[:, None, :] - mixed[None, :, :]
        dist = np.sum(diff.real**2 + diff.imag**2, axis=2)
        # max-shift for numerical stability, as in the compiled kernel
        weights = np.exp(dist.min(axis=1, keepdims=True) - dist)
        out[start : start + _CHUNK] = (weights @ candidates) / weights.sum(
            axis=1, keepdims=True
        )
    return out
