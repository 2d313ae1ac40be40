"""Optimal transmit filter with a zero-forcing legitimate receiver and a
Wiener (linear MMSE) eavesdropper receiver.

Three operational regimes exist.  At low gamma only the power constraint
binds and the filter coincides with the zero-forcing power-only optimum.
At high gamma only the secrecy constraint binds and the filter follows
from the simultaneous diagonalization of the two channel Grams.  In
between, both constraints bind and no closed form is available; a damped
Newton solve of the stationarity equation inside nested bisections on the
two multipliers, certified a posteriori by its KKT residual, covers that
middle regime.
"""

import numpy as np
from scipy.optimize import brentq

from .channel import gram_pair, validate
from .design_zf import DesignSolution, Regime, secrecy_inactive_filter
from .exceptions import (
    ConvergenceFailed,
    GammaTooLarge,
    RegimeUndefined,
    WrongRegime,
)
from .filters import TransmitFilter, mse_wiener, mse_zf, power_used
from .linalg import herm_power, simultaneous_diagonalize

FEAS_TOL = 1e-6
KKT_TOL = 1e-6
INNER_MAX_ITER = 500
OUTER_MAX_ITER = 200


def _eve_mse_from_z(z, gram_e):
    """tr{I} - tr{E (Z + E)^{-1}} evaluated in the Z variable."""
    m = z.shape[0]
    return m - float(np.trace(gram_e @ np.linalg.inv(z + gram_e)).real)


def max_gamma_power_limited(s):
    """Largest secrecy floor still satisfied by the power-only filter."""
    validate(s)
    gram_m, gram_e = gram_pair(s)
    m = s.m
    tr_isqrt = float(np.trace(herm_power(gram_m, -0.5)).real)
    z = (tr_isqrt / s.p_avg) * herm_power(gram_m, 0.5)
    return _eve_mse_from_z(z, gram_e)


def _secrecy_limited_diag(s):
    """Shared algebra of the secrecy-only filter and its power threshold."""
    gram_m, gram_e = gram_pair(s)
    m = s.m
    if not s.gamma < m:
        raise GammaTooLarge(f"gamma={s.gamma} must be < {m}")
    sd = simultaneous_diagonalize(gram_m, gram_e)
    alpha = float(np.sum(np.sqrt(sd.lambda_e / sd.lambda_m))) / (m - s.gamma)
    diag = alpha * np.sqrt(sd.lambda_m * sd.lambda_e) - sd.lambda_e
    if np.any(diag <= 0):
        raise RegimeUndefined(
            "secrecy-only filter undefined: nonpositive diagonal weight"
        )
    return sd, diag


def min_power_secrecy_limited(s):
    """Smallest power budget at which the secrecy-only regime begins."""
    validate(s)
    sd, diag = _secrecy_limited_diag(s)
    return float(np.trace((sd.c / diag) @ sd.c.conj().T).real)


def power_limited_filter(s):
    """Power-limited filter; valid while gamma <= max_gamma_power_limited(s)."""
    if s.gamma > max_gamma_power_limited(s):
        raise WrongRegime(
            f"gamma={s.gamma} exceeds the power-limited threshold"
        )
    gram_m, _ = gram_pair(s)
    return secrecy_inactive_filter(gram_m, s.p_avg)


def secrecy_limited_filter(s):
    """Secrecy-limited filter C (alpha Lm^1/2 Le^1/2 - Le)^{-1/2}.

    The result is invariant to the column-scaling freedom of the
    simultaneous diagonalization.
    """
    validate(s)
    sd, diag = _secrecy_limited_diag(s)
    t = TransmitFilter(h_t=sd.c / np.sqrt(diag))
    if power_used(t) > s.p_avg * (1 + FEAS_TOL):
        raise WrongRegime(
            f"power budget {s.p_avg} is below the secrecy-only "
            f"threshold {power_used(t)}"
        )
    return t


def _herm_basis(m):
    """Real orthonormal basis of the Hermitian m-by-m matrices."""
    basis = []
    for i in range(m):
        b = np.zeros((m, m), dtype=complex)
        b[i, i] = 1.0
        basis.append(b)
    for i in range(m):
        for j in range(i + 1, m):
            b = np.zeros((m, m), dtype=complex)
            b[i, j] = b[j, i] = 1.0 / np.sqrt(2.0)
            basis.append(b)
            b = np.zeros((m, m), dtype=complex)
            b[i, j] = -1j / np.sqrt(2.0)
            b[j, i] = 1j / np.sqrt(2.0)
            basis.append(b)
    return basis


def _newton_stationary(a_inv, gram_e, nu, mu, z0):
    """Solve A - nu*S(Z) - mu*Z^{-2} = 0 for Hermitian PD Z, with
    S(Z) = (Z+E)^{-1} E (Z+E)^{-1}.

    The left side is the gradient of the strictly convex function
    tr{AZ} + nu*tr{E(Z+E)^{-1}} + mu*tr{Z^{-1}}, so its Jacobian is a
    positive-definite linear map and damped Newton converges from any
    positive-definite start.  Returns None if the iteration budget runs
    out.
    """
    m = z0.shape[0]
    basis = _herm_basis(m)
    scale = np.linalg.norm(a_inv)

    def residual(z):
        inv_ze = np.linalg.inv(z + gram_e)
        s_mat = inv_ze @ gram_e @ inv_ze
        z_inv = np.linalg.inv(z)
        return a_inv - nu * s_mat - mu * (z_inv @ z_inv), inv_ze, s_mat, z_inv

    def vec(h):
        return np.array([np.trace(b.conj().T @ h).real for b in basis])

    z = z0.copy()
    f, inv_ze, s_mat, z_inv = residual(z)
    fnorm = np.linalg.norm(f)
    for _ in range(INNER_MAX_ITER):
        if fnorm <= 1e-13 * scale:
            return z
        jac = np.empty((m * m, m * m))
        for k, b in enumerate(basis):
            db = nu * (inv_ze @ b @ s_mat + s_mat @ b @ inv_ze) + mu * (
                z_inv @ b @ z_inv @ z_inv + z_inv @ z_inv @ b @ z_inv
            )
            jac[:, k] = vec(0.5 * (db + db.conj().T))
        try:
            coeff = np.linalg.solve(jac, vec(f))
        except np.linalg.LinAlgError:
            return None
        dz = -sum(c * b for c, b in zip(coeff, basis))
        step = 1.0
        while step > 1e-14:
            z_new = z + step * dz
            if np.linalg.eigvalsh(z_new)[0] > 0:
                f_new, inv_ze_n, s_n, z_inv_n = residual(z_new)
                fn = np.linalg.norm(f_new)
                if fn < (1 - 0.25 * step) * fnorm:
                    z, f, fnorm = z_new, f_new, fn
                    inv_ze, s_mat, z_inv = inv_ze_n, s_n, z_inv_n
                    break
            step *= 0.5
        else:
            return None
    return None


def _root(fn, lo, hi):
    """Brent root find on a bracketing interval, machine-tight."""
    return float(
        brentq(fn, lo, hi, xtol=1e-300, rtol=8.9e-16, maxiter=OUTER_MAX_ITER)
    )


def both_active_solve(s):
    """Middle regime: both power and secrecy constraints active.

    For fixed multipliers (nu, mu) the stationarity equation is solved by
    damped Newton; mu is tuned so the power constraint is tight, and an
    outer level drives nu so the Wiener eavesdropper MSE hits gamma.  The
    accepted solution is certified by its KKT residual, so the nested
    iterations cannot silently return a wrong answer.
    """
    validate(s)
    gram_m, gram_e = gram_pair(s)
    a_inv = herm_power(gram_m, -1.0)
    p_avg = s.p_avg
    m = s.m

    tr_isqrt = float(np.trace(herm_power(gram_m, -0.5)).real)
    warm = {"z": (tr_isqrt / p_avg) * herm_power(gram_m, 0.5)}
    mu0 = (tr_isqrt / p_avg) ** 2

    def solve_at(nu, mu):
        z = _newton_stationary(a_inv, gram_e, nu, mu, warm["z"])
        if z is None:
            z = _newton_stationary(
                a_inv, gram_e, nu, mu, (m / p_avg) * np.eye(m)
            )
        if z is None:
            raise ConvergenceFailed(
                f"stationarity solve failed at nu={nu}, mu={mu}"
            )
        warm["z"] = z
        return z

    def power_gap(nu, mu):
        z = solve_at(nu, mu)
        return float(np.trace(np.linalg.inv(z)).real) - p_avg

    class _PowerSlack(Exception):
        """The power constraint cannot be made tight at this nu."""

    def solve_power_tight(nu):
        # tr{Z^{-1}} decreases as mu grows, so bracket then bisect.
        lo, hi = mu0, mu0
        gap = power_gap(nu, mu0)
        if abs(gap) <= 1e-10 * p_avg:
            return mu0, solve_at(nu, mu0)
        if gap > 0:
            for _ in range(80):
                hi *= 2.0
                g_hi = power_gap(nu, hi)
                if g_hi <= 0:
                    break
            else:
                raise ConvergenceFailed("power multiplier bracket failed")
            mu = _root(lambda x: power_gap(nu, x), lo, hi)
        elif gap < 0:
            for _ in range(200):
                lo *= 0.5
                g_lo = power_gap(nu, lo)
                if g_lo >= 0:
                    break
            else:
                # the mu=0 limit already uses less power than the
                # budget, which means this nu overshoots the regime
                raise _PowerSlack
            mu = _root(lambda x: power_gap(nu, x), lo, hi)
        else:
            mu = mu0
        return mu, solve_at(nu, mu)

    def eve_gap(nu):
        try:
            mu, z = solve_power_tight(nu)
        except _PowerSlack:
            return float(s.m), None, None
        return _eve_mse_from_z(z, gram_e) - s.gamma, mu, z

    # Bracket nu: at nu=0 the eavesdropper MSE sits below gamma (that is
    # what put us in this regime); grow nu until it crosses above.
    g_lo, _, _ = eve_gap(0.0)
    if g_lo > 0:
        raise ConvergenceFailed("secrecy gap positive at nu=0")
    nu_hi = 1.0
    for _ in range(60):
        g_hi, _, _ = eve_gap(nu_hi)
        if g_hi >= 0:
            break
        nu_hi *= 2.0
    else:
        raise ConvergenceFailed("could not bracket the secrecy multiplier")

    nu = _root(lambda x: eve_gap(x)[0], 0.0, nu_hi)
    gap, mu, z = eve_gap(nu)
    if z is None:
        raise ConvergenceFailed(
            "power constraint went slack at the accepted multiplier"
        )
    eve_mse = gap + s.gamma
    inv_ze = np.linalg.inv(z + gram_e)
    grad = a_inv - nu * (inv_ze @ gram_e @ inv_ze) - mu * np.linalg.matrix_power(
        np.linalg.inv(z), 2
    )
    residual = float(np.linalg.norm(grad) / np.linalg.norm(a_inv))
    if residual > KKT_TOL or abs(eve_mse - s.gamma) > FEAS_TOL * s.gamma:
        raise ConvergenceFailed(
            f"uncertified solution: kkt_residual={residual}, "
            f"eve_mse={eve_mse} vs gamma={s.gamma}"
        )

    g = np.linalg.inv(z)
    vals, vecs = np.linalg.eigh(0.5 * (g + g.conj().T))
    t = TransmitFilter(h_t=(vecs * np.sqrt(vals)) @ vecs.conj().T)
    return DesignSolution(
        t=t,
        regime=Regime.BOTH_ACTIVE,
        nu=nu,
        mu=mu,
        mse_main=mse_zf(s.h_m, t),
        mse_eve=eve_mse,
        power=power_used(t),
        kkt_residual=residual,
    )


def _solution_from_filter(s, t, regime, nu, mu, kkt_residual):
    return DesignSolution(
        t=t,
        regime=regime,
        nu=nu,
        mu=mu,
        mse_main=mse_zf(s.h_m, t),
        mse_eve=mse_wiener(s.h_e, t),
        power=power_used(t),
        kkt_residual=kkt_residual,
    )


def design_zf_wiener(s):
    """Dispatch to the regime whose defining inequalities hold."""
    validate(s)
    if not s.gamma < s.m:
        raise GammaTooLarge(f"gamma must be < {s.m}")
    gram_m, gram_e = gram_pair(s)

    if s.gamma <= max_gamma_power_limited(s):
        t = secrecy_inactive_filter(gram_m, s.p_avg)
        # ZF stationarity: mu Z^{-2} = M^{-1} with Z = G^{-1}.
        tr_isqrt = float(np.trace(herm_power(gram_m, -0.5)).real)
        mu = (tr_isqrt / s.p_avg) ** 2
        return _solution_from_filter(
            s, t, Regime.SECRECY_INACTIVE, nu=0.0, mu=mu, kkt_residual=0.0
        )

    try:
        threshold_p = min_power_secrecy_limited(s)
    except RegimeUndefined:
        threshold_p = np.inf
    if s.p_avg >= threshold_p:
        t = secrecy_limited_filter(s)
        # mu = 0; back out nu from the stationarity equation.
        z = np.linalg.inv(t.gram)
        inv_ze = np.linalg.inv(z + gram_e)
        stat = inv_ze @ gram_e @ inv_ze
        a_inv = herm_power(gram_m, -1.0)
        nu = float(np.trace(a_inv).real / np.trace(stat).real)
        residual = float(
            np.linalg.norm(a_inv - nu * stat) / np.linalg.norm(a_inv)
        )
        return _solution_from_filter(
            s, t, Regime.POWER_INACTIVE, nu=nu, mu=0.0, kkt_residual=residual
        )

    return both_active_solve(s)
