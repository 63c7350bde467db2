"""Quantum relative entropy, its variance, and asymmetric-testing ROC curves.

For Gaussian states the relative entropy is evaluated through the Gibbs
matrix G = 2i Omega acoth(2i V Omega) and the function

    Sigma(V0, V1) = [ln det(V1 + i Omega/2) + Tr(V0 G1) + delta^T G1 delta] / 2,

with D = Sigma(V0, V1) - Sigma(V0, V0). The log-determinant is accumulated
as sum_k ln(nu_k^2 - 1/4) over symplectic eigenvalues, and the difference of
the two Sigma terms is assembled pairwise so nearby states do not lose all
significance. For grid corners where D itself is a near-cancellation below
float64 resolution, every routine accepts ``dps`` to run the identical
formulas in mpmath arbitrary precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import mpmath as mp
import numpy as np

from .gaussian import (
    DEFAULT_TOL,
    GaussianState,
    NumericError,
    Tolerances,
    symplectic_form,
    williamson,
)
from .special import normal_quantile

_PURE_NU_TOL = 1e-10
_NEGATIVE_CLAMP = -1e-12


@dataclass
class RelEntResult:
    """Relative entropy d (nats) and relative entropy variance v (nats^2)."""

    d: float
    v: float
    gibbs0: np.ndarray
    gibbs1: np.ndarray


@dataclass
class RocCurve:
    """Sampled (P_fa, P_md) operating curve for M copies."""

    p_fa: np.ndarray
    p_md: np.ndarray
    copies: int
    meta: dict = field(default_factory=dict)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.p_fa.tolist(), self.p_md.tolist()))

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.p_fa) > 0) and np.all(np.diff(self.p_md) <= 1e-15))


def _check_mixed(nus: np.ndarray, who: str) -> None:
    bad = np.nonzero(nus <= 0.5 + _PURE_NU_TOL)[0]
    if bad.size:
        raise ValueError(
            f"Gibbs matrix diverges for pure modes; {who} has symplectic "
            f"eigenvalue {nus[bad[0]]:.12g} at mode index {int(bad[0])}"
        )


def gibbs_matrix(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Gibbs matrix of a strictly mixed Gaussian state.

    Built from the Williamson decomposition by applying the scalar map
    g(nu) = ln((nu + 1/2) / (nu - 1/2)) to each symplectic eigenvalue and
    conjugating back with S^{-T} (.) S^{-1}.
    """
    dec = williamson(state.cov, tol)
    _check_mixed(dec.nus, "state")
    g = 2.0 * np.arctanh(0.5 / dec.nus)
    s_inv = np.linalg.solve(dec.S, np.eye(dec.S.shape[0]))
    gibbs = s_inv.T @ np.diag(np.repeat(g, 2)) @ s_inv
    return 0.5 * (gibbs + gibbs.T)


def _clamp_nonneg(x: float, what: str) -> float:
    if x < 0.0:
        if x < _NEGATIVE_CLAMP:
            raise NumericError(f"{what} evaluated to {x:.6e} < 0 beyond tolerance")
        return 0.0
    return x


def _rel_ent_f64(rho0: GaussianState, rho1: GaussianState, tol: Tolerances) -> RelEntResult:
    dec0 = williamson(rho0.cov, tol)
    dec1 = williamson(rho1.cov, tol)
    _check_mixed(dec1.nus, "rho1")
    _check_mixed(dec0.nus, "rho0")

    g0 = 2.0 * np.arctanh(0.5 / dec0.nus)
    g1 = 2.0 * np.arctanh(0.5 / dec1.nus)
    s0_inv = np.linalg.solve(dec0.S, np.eye(dec0.S.shape[0]))
    s1_inv = np.linalg.solve(dec1.S, np.eye(dec1.S.shape[0]))
    gibbs0 = s0_inv.T @ np.diag(np.repeat(g0, 2)) @ s0_inv
    gibbs1 = s1_inv.T @ np.diag(np.repeat(g1, 2)) @ s1_inv
    gibbs0 = 0.5 * (gibbs0 + gibbs0.T)
    gibbs1 = 0.5 * (gibbs1 + gibbs1.T)

    # ln det(V1 + i Omega/2) - ln det(V0 + i Omega/2), paired by sorted spectra
    lndet_diff = float(
        np.sum(np.log1p((dec1.nus - dec0.nus) * (dec1.nus + dec0.nus) / (dec0.nus**2 - 0.25)))
    )
    trace_diff = float(np.trace(rho0.cov @ (gibbs1 - gibbs0)))
    delta = rho0.mean - rho1.mean
    quad = float(delta @ gibbs1 @ delta)
    d = _clamp_nonneg(0.5 * (lndet_diff + trace_diff + quad), "relative entropy")

    gamma = gibbs0 - gibbs1
    omega = symplectic_form(rho0.modes)
    gv = gamma @ rho0.cov
    go = gamma @ omega
    v = (
        0.5 * float(np.trace(gv @ gv))
        + 0.125 * float(np.trace(go @ go))
        + float(delta @ gibbs1 @ rho0.cov @ gibbs1 @ delta)
    )
    return RelEntResult(d=d, v=_clamp_nonneg(v, "relative entropy variance"), gibbs0=gibbs0, gibbs1=gibbs1)


def _mp_omega(n: int) -> mp.matrix:
    omega = mp.zeros(2 * n, 2 * n)
    for k in range(n):
        omega[2 * k, 2 * k + 1] = mp.mpf(1)
        omega[2 * k + 1, 2 * k] = mp.mpf(-1)
    return omega


def _mp_gibbs_lndet(cov: mp.matrix) -> tuple[mp.matrix, mp.mpf]:
    """Gibbs matrix and ln det(V + i Omega/2) at working precision.

    Uses the Hermitian form W = V^{1/2} (i Omega) V^{1/2}, whose eigenvalues
    are +-nu_k, and G = V^{-1/2} U diag(nu g(nu)) U^H V^{-1/2}.
    """
    dim = cov.rows
    n = dim // 2
    evals, q = mp.eigsy(mp.matrix(cov))
    if min(evals) <= 0:
        raise ValueError("covariance matrix is not positive definite")
    d_sqrt = mp.zeros(dim, dim)
    d_isqrt = mp.zeros(dim, dim)
    for i in range(dim):
        r = mp.sqrt(evals[i])
        d_sqrt[i, i] = r
        d_isqrt[i, i] = 1 / r
    sqrt_cov = q * d_sqrt * q.T
    isqrt_cov = q * d_isqrt * q.T

    w = sqrt_cov * (mp.mpc(0, 1) * _mp_omega(n)) * sqrt_cov
    e, u = mp.eighe(w)
    lndet = mp.mpf(0)
    phi = mp.zeros(dim, dim)
    for i in range(dim):
        nu = abs(e[i])
        if nu <= mp.mpf(1) / 2:
            raise ValueError("Gibbs matrix diverges for pure modes")
        if e[i] > 0:
            lndet += mp.log(nu**2 - mp.mpf(1) / 4)
        phi[i, i] = nu * mp.log((nu + mp.mpf(1) / 2) / (nu - mp.mpf(1) / 2))
    gibbs_c = isqrt_cov * (u * phi * u.H) * isqrt_cov
    gibbs = mp.zeros(dim, dim)
    for i in range(dim):
        for j in range(dim):
            gibbs[i, j] = mp.re(gibbs_c[i, j])
    return gibbs, lndet


def _mp_trace(m: mp.matrix) -> mp.mpf:
    return mp.fsum(m[i, i] for i in range(m.rows))


def _rel_ent_mp(rho0: GaussianState, rho1: GaussianState, dps: int) -> RelEntResult:
    with mp.workdps(dps):
        n = rho0.modes
        cov0 = mp.matrix([[mp.mpf(x) for x in row] for row in rho0.cov.tolist()])
        cov1 = mp.matrix([[mp.mpf(x) for x in row] for row in rho1.cov.tolist()])
        gibbs0, lndet0 = _mp_gibbs_lndet(cov0)
        gibbs1, lndet1 = _mp_gibbs_lndet(cov1)
        delta = mp.matrix([mp.mpf(a) - mp.mpf(b) for a, b in zip(rho0.mean, rho1.mean)])
        quad = (delta.T * gibbs1 * delta)[0]
        d = (lndet1 - lndet0 + _mp_trace(cov0 * (gibbs1 - gibbs0)) + quad) / 2
        gamma = gibbs0 - gibbs1
        omega = _mp_omega(n)
        gv = gamma * cov0
        go = gamma * omega
        v = (
            _mp_trace(gv * gv) / 2
            + _mp_trace(go * go) / 8
            + (delta.T * (gibbs1 * cov0 * gibbs1) * delta)[0]
        )
        g0f = np.array([[float(gibbs0[i, j]) for j in range(2 * n)] for i in range(2 * n)])
        g1f = np.array([[float(gibbs1[i, j]) for j in range(2 * n)] for i in range(2 * n)])
        return RelEntResult(
            d=_clamp_nonneg(float(d), "relative entropy"),
            v=_clamp_nonneg(float(v), "relative entropy variance"),
            gibbs0=g0f,
            gibbs1=g1f,
        )


def relative_entropy(
    rho0: GaussianState,
    rho1: GaussianState,
    tol: Tolerances = DEFAULT_TOL,
    dps: int | None = None,
) -> RelEntResult:
    """Relative entropy D(rho0 || rho1) between Gaussian states.

    rho1 must be strictly mixed. Pass ``dps`` for an arbitrary-precision
    evaluation (used by the validation suite at parameter corners where the
    result is a deep cancellation).
    """
    if rho0.modes != rho1.modes:
        raise ValueError("states must have the same number of modes")
    if dps is not None:
        return _rel_ent_mp(rho0, rho1, dps)
    return _rel_ent_f64(rho0, rho1, tol)


def relative_entropy_variance(
    rho0: GaussianState,
    rho1: GaussianState,
    tol: Tolerances = DEFAULT_TOL,
    dps: int | None = None,
) -> RelEntResult:
    """Relative entropy variance V(rho0 || rho1); shares the core with
    :func:`relative_entropy` and returns the same populated result."""
    return relative_entropy(rho0, rho1, tol=tol, dps=dps)


def _pmd_raw(d: float, v: float, copies: int, epsilon: float) -> tuple[float, bool]:
    exponent = copies * d + math.sqrt(copies * v) * normal_quantile(epsilon)
    if exponent < 0.0:
        return 1.0, True
    value = math.exp(-exponent) if exponent < 745.0 else 0.0
    return value, False


def pmd_second_order(d: float, v: float, copies: int, epsilon: float) -> float:
    """Second-order missed-detection probability exp(-[M d + sqrt(M v) Phi^{-1}(eps)]).

    The O(log M) and O(1) corrections of the expansion are set to zero; the
    result is clamped to [0, 1].
    """
    if d < 0 or v < 0:
        raise ValueError("d and v must be non-negative")
    if copies < 1:
        raise ValueError("copies must be >= 1")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    return _pmd_raw(d, v, copies, epsilon)[0]


DEFAULT_EPSILON_GRID = np.geomspace(1e-4, 0.9, 60)


def roc_from_rates(
    d: float,
    v: float,
    copies: int,
    grid: Sequence[float] | None = None,
    meta: dict | None = None,
) -> RocCurve:
    """ROC curve (eps, P_md(eps)) for given decay rate d and variance v."""
    eps = np.sort(np.asarray(DEFAULT_EPSILON_GRID if grid is None else grid, dtype=float))
    if eps.size == 0:
        raise ValueError("epsilon grid is empty")
    if eps[0] <= 0.0 or eps[-1] >= 1.0:
        raise ValueError("epsilon grid values must lie in (0, 1)")
    values = np.empty_like(eps)
    clamped = 0
    for i, e in enumerate(eps):
        values[i], was_clamped = _pmd_raw(d, v, copies, float(e))
        clamped += was_clamped
    info = dict(meta or {})
    info.update(
        d=d,
        v=v,
        clamped_points=clamped,
        truncation="second-order: O(log M) and O(1) terms set to zero",
    )
    return RocCurve(p_fa=eps, p_md=values, copies=copies, meta=info)


def roc_asymmetric(
    rho0: GaussianState,
    rho1: GaussianState,
    copies: int,
    grid: Sequence[float] | None = None,
    dps: int | None = None,
    meta: dict | None = None,
) -> RocCurve:
    """ROC curve from the relative entropy and its variance of a state pair."""
    res = relative_entropy(rho0, rho1, dps=dps)
    return roc_from_rates(res.d, res.v, copies, grid, meta)
