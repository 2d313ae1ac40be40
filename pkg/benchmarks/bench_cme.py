"""Benchmark the compiled posterior-mean kernel against the numpy fallback.

Usage: python benchmarks/bench_cme.py [trials]
"""

import sys
import time

import numpy as np

from secfilt import _cme_numpy
from secfilt.montecarlo import CME_BACKEND, Constellation, _candidate_grid

try:
    from secfilt import _cme_core
except ImportError:
    _cme_core = None


def run(kernel, obs, mixed, candidates, repeats=3):
    best = np.inf
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = kernel.posterior_means(obs, mixed, candidates)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    trials = int(sys.argv[1]) if len(sys.argv) > 1 else 20000
    rng = np.random.Generator(np.random.Philox(key=[7, 0]))
    m, n = 2, 2
    h_eff = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))

    for const in (Constellation.bpsk(), Constellation.pam16()):
        candidates = _candidate_grid(const.points, m)
        mixed = np.ascontiguousarray(candidates @ h_eff.T)
        idx = rng.integers(0, len(const.points), size=(trials, m))
        x = const.points[idx]
        noise = (
            rng.standard_normal((trials, n)) + 1j * rng.standard_normal((trials, n))
        ) / np.sqrt(2)
        obs = np.ascontiguousarray(x @ h_eff.T + noise)

        t_np, out_np = run(_cme_numpy, obs, mixed, candidates)
        print(f"[{const.kind}] {trials} trials, {len(candidates)} candidates")
        print(f"  numpy fallback : {t_np * 1e3:9.2f} ms")
        if _cme_core is not None:
            t_cy, out_cy = run(_cme_core, obs, mixed, candidates)
            err = np.max(np.abs(out_np - out_cy))
            print(
                f"  cython kernel  : {t_cy * 1e3:9.2f} ms "
                f"({t_np / t_cy:.1f}x, max deviation {err:.2e})"
            )
        else:
            print("  cython kernel  : not built")
    print(f"active backend at import: {CME_BACKEND}")


if __name__ == "__main__":
    main()
