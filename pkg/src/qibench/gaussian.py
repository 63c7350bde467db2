"""Gaussian states in phase space and the channels used by the benchmarks.

Conventions: quadrature ordering (q1, p1, ..., qN, pN), vacuum variance 1/2,
so a thermal state with n photons per mode has covariance (n + 1/2) * I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.linalg as sla


class NumericError(RuntimeError):
    """A numerical procedure failed (factorization, convergence, ...)."""


@dataclass(frozen=True)
class Tolerances:
    """Matrix tolerance bundle used across the library."""

    symmetry: float = 1e-12
    physicality: float = 1e-10
    reconstruction: float = 1e-10


DEFAULT_TOL = Tolerances()


def symplectic_form(modes: int) -> np.ndarray:
    """Block-diagonal symplectic form Omega for the given number of modes.

    Satisfies Omega @ Omega = -I and Omega.T = -Omega.
    """
    if modes < 1:
        raise ValueError("modes must be a positive integer")
    omega = np.zeros((2 * modes, 2 * modes))
    for k in range(modes):
        omega[2 * k, 2 * k + 1] = 1.0
        omega[2 * k + 1, 2 * k] = -1.0
    return omega


@dataclass
class GaussianState:
    """An N-mode Gaussian state given by its mean vector and covariance matrix."""

    modes: int
    mean: np.ndarray
    cov: np.ndarray
    tol: Tolerances = field(default=DEFAULT_TOL, repr=False, compare=False)

    def __post_init__(self):
        self.mean = np.asarray(self.mean, dtype=float).reshape(-1)
        self.cov = np.asarray(self.cov, dtype=float)
        if self.modes < 1:
            raise ValueError("modes must be a positive integer")
        dim = 2 * self.modes
        if self.mean.shape != (dim,):
            raise ValueError(f"mean must have length {dim}, got {self.mean.shape}")
        if self.cov.shape != (dim, dim):
            raise ValueError(f"cov must be {dim}x{dim}, got {self.cov.shape}")
        asym = np.abs(self.cov - self.cov.T).max()
        if asym > self.tol.symmetry:
            raise ValueError(f"cov is not symmetric (max asymmetry {asym:.3e})")

    def mean_photons(self) -> float:
        """Total mean photon number summed over modes."""
        return float(self.mean @ self.mean) / 2.0 + np.trace(self.cov) / 2.0 - self.modes / 2.0


class PhysicalityCheck(NamedTuple):
    physical: bool
    nu_min: float


@dataclass
class WilliamsonDecomposition:
    """Symplectic matrix S and symplectic eigenvalues of a covariance matrix.

    The input V is recovered as S @ diag(nu_1, nu_1, ..., nu_N, nu_N) @ S.T,
    with S @ Omega @ S.T = Omega and nus sorted descending.
    """

    S: np.ndarray
    nus: np.ndarray
    physical: bool

    def diagonal_form(self) -> np.ndarray:
        return np.diag(np.repeat(self.nus, 2))


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix, sorted descending.

    Computed from the moduli of the eigenvalues of i * Omega @ V; does not
    require V to be physical (values below 1/2 indicate unphysicality).
    """
    cov = np.asarray(cov, dtype=float)
    modes = cov.shape[0] // 2
    eigs = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(modes) @ cov)))[::-1]
    return eigs[::2].real.copy()


def is_physical(state: GaussianState, tol: Tolerances = DEFAULT_TOL) -> PhysicalityCheck:
    """Check the uncertainty relation V + i*Omega/2 >= 0 via symplectic eigenvalues."""
    nu_min = float(symplectic_eigenvalues(state.cov).min())
    return PhysicalityCheck(nu_min >= 0.5 - tol.physicality, nu_min)


def williamson(cov: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> WilliamsonDecomposition:
    """Williamson normal form of a symmetric positive-definite matrix.

    Diagonalizes V^(-1/2) Omega V^(-1/2) by a real Schur decomposition and
    assembles S from the paired Schur vectors. Blocks are sorted by
    descending symplectic eigenvalue, and each (q, p) column pair is rotated
    so its first significant q entry is positive with vanishing p partner,
    which makes the output deterministic.
    """
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
        raise ValueError("cov must be a square 2N x 2N matrix")
    asym = np.abs(cov - cov.T).max()
    if asym > tol.symmetry:
        raise ValueError(f"cov is not symmetric (max asymmetry {asym:.3e})")
    modes = cov.shape[0] // 2

    w, U = np.linalg.eigh(cov)
    if w.min() <= 0.0:
        raise ValueError(f"cov is not positive definite (min eigenvalue {w.min():.3e})")
    sqrt_cov = (U * np.sqrt(w)) @ U.T
    inv_sqrt_cov = (U / np.sqrt(w)) @ U.T

    omega = symplectic_form(modes)
    skew = inv_sqrt_cov @ omega @ inv_sqrt_cov
    try:
        T, Q = sla.schur(skew, output="real")
    except sla.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise NumericError(f"Schur decomposition failed: {exc}") from exc

    kappas = np.empty(modes)
    for k in range(modes):
        kappa = T[2 * k, 2 * k + 1]
        if kappa < 0.0:
            Q[:, [2 * k, 2 * k + 1]] = Q[:, [2 * k + 1, 2 * k]]
            kappa = -kappa
        if kappa == 0.0:
            raise NumericError("degenerate symplectic structure (zero Schur block)")
        kappas[k] = kappa
    nus = 1.0 / kappas

    order = np.argsort(-nus)
    nus = nus[order]
    cols = np.empty_like(Q)
    for j, k in enumerate(order):
        cols[:, 2 * j] = Q[:, 2 * k]
        cols[:, 2 * j + 1] = Q[:, 2 * k + 1]

    S = sqrt_cov @ cols / np.repeat(np.sqrt(nus), 2)[None, :]

    # canonical in-block rotation: first significant row -> (positive, 0)
    for j in range(modes):
        u = S[:, 2 * j].copy()
        v = S[:, 2 * j + 1].copy()
        norms = np.hypot(u, v)
        i0 = int(np.argmax(norms > 1e-8 * norms.max()))
        r = norms[i0]
        c, s = u[i0] / r, v[i0] / r
        S[:, 2 * j] = c * u + s * v
        S[:, 2 * j + 1] = -s * u + c * v

    physical = bool(nus.min() >= 0.5 - tol.physicality)
    return WilliamsonDecomposition(S=S, nus=nus, physical=physical)


def make_coherent(n_s: float) -> GaussianState:
    """Single-mode coherent state with n_s mean photons, displaced along q."""
    if n_s < 0:
        raise ValueError("mean photon number must be non-negative")
    return GaussianState(1, np.array([math.sqrt(2.0 * n_s), 0.0]), 0.5 * np.eye(2))


def make_thermal(n_bar: float) -> GaussianState:
    """Single-mode thermal state with n_bar mean photons."""
    if n_bar < 0:
        raise ValueError("mean photon number must be non-negative")
    return GaussianState(1, np.zeros(2), (n_bar + 0.5) * np.eye(2))


def apply_amplifier(state: GaussianState, gain: float, rescale_input: bool = True) -> GaussianState:
    """Phase-preserving quantum-limited amplifier on a single mode.

    The quadrature map is x -> sqrt(g) x + sqrt(g - 1) x_idler with a
    vacuum idler. With rescale_input the input is first divided by sqrt(g),
    leaving the mean unchanged and adding (g - 1)/2 noise per quadrature.
    """
    if gain < 1.0:
        raise ValueError("amplifier gain must be >= 1")
    if state.modes != 1:
        raise ValueError("amplifier acts on a single mode")
    added = (gain - 1.0) * 0.5 * np.eye(2)
    if rescale_input:
        return GaussianState(1, state.mean.copy(), state.cov + added)
    return GaussianState(1, math.sqrt(gain) * state.mean, gain * state.cov + added)


def amplified_source(n_s: float, n_a: float) -> GaussianState:
    """Amplified coherent source with mean (sqrt(2 n_s), 0) and covariance n_a * I.

    n_a is the total noise variance of the source as used by the benchmark
    formulas; it must be at least the vacuum level 1/2.
    """
    if n_s < 0:
        raise ValueError("mean photon number must be non-negative")
    if n_a < 0.5:
        raise ValueError("source noise n_a below vacuum level 1/2 is unphysical")
    return GaussianState(1, np.array([math.sqrt(2.0 * n_s), 0.0]), n_a * np.eye(2))


def added_photons_from_gain(gain: float, n_b: float) -> float:
    """Amplifier-added photon number N_A = N_B + g_A / 2 for gain g_A >= 1."""
    if gain < 1.0:
        raise ValueError("amplifier gain must be >= 1")
    if n_b < 0:
        raise ValueError("background photon number must be non-negative")
    return n_b + 0.5 * gain


def apply_beamsplitter(
    state: GaussianState, transmissivity: float, environment: GaussianState
) -> GaussianState:
    """Mix a single-mode state with an environment mode, keeping the output port.

    mean -> sqrt(t) mean + sqrt(1 - t) mean_env,
    cov  -> t cov + (1 - t) cov_env.
    """
    if not 0.0 <= transmissivity <= 1.0:
        raise ValueError("transmissivity must lie in [0, 1]")
    if state.modes != 1 or environment.modes != 1:
        raise ValueError("beamsplitter mixes two single-mode states")
    t = transmissivity
    mean = math.sqrt(t) * state.mean + math.sqrt(1.0 - t) * environment.mean
    cov = t * state.cov + (1.0 - t) * environment.cov
    return GaussianState(1, mean, cov)
