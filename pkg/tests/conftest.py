"""Shared fixtures: the worked 2x2 example scenario and random instances."""

import numpy as np
import pytest

from secfilt import WiretapScenario

# Worked example used throughout: Gram matrices M = [[17,-2],[-2,5]],
# E = [[5,-1],[-1,2]], for which many quantities have exact closed forms.
H_MAIN = np.array([[4.0, -1.0], [1.0, 2.0]])
H_EVE = np.array([[2.0, -1.0], [1.0, 1.0]])

# Same main channel with an eavesdropper that is NOT dominated by it.
H_EVE_STRONG = np.array([[3.5, -1.0], [1.0, 3.0]])


@pytest.fixture
def example_scenario():
    return WiretapScenario(h_m=H_MAIN, h_e=H_EVE, p_avg=1.0, gamma=0.5)


def make_scenario(gamma=0.5, p_avg=1.0):
    return WiretapScenario(h_m=H_MAIN, h_e=H_EVE, p_avg=p_avg, gamma=gamma)


def random_channels(rng, m, n_m=None, n_e=None, complex_entries=True):
    """A random full-rank channel pair that passes validation."""
    n_m = n_m or m + 1
    n_e = n_e or m + 1
    while True:
        h_m = rng.standard_normal((n_m, m))
        h_e = rng.standard_normal((n_e, m))
        if complex_entries:
            h_m = h_m + 1j * rng.standard_normal((n_m, m))
            h_e = h_e + 1j * rng.standard_normal((n_e, m))
        s_m = np.linalg.svd(h_m, compute_uv=False)
        s_e = np.linalg.svd(h_e, compute_uv=False)
        if s_m[-1] > 1e-3 * s_m[0] and s_e[-1] > 1e-3 * s_e[0]:
            return h_m, h_e
