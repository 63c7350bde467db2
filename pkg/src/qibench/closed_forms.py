"""Closed-form benchmark bounds for coherent-state microwave illumination.

Implements the printed error-probability bounds for the amplified and the
cryogenically attenuated (maser) coherent-state sources,

    P_err <= (1 / (2 xi1)) exp(-M eta N_S xi2),

their optical and high-background limits, the TMSV error-exponent asymptote,
and the relative-entropy pairs (D, V) for the asymmetric setting. Square-root
differences are evaluated through their conjugate forms, e.g.

    sqrt(N_B + 1) - sqrt(N_B) = 1 / (sqrt(N_B + 1) + sqrt(N_B)),

which are mathematically identical to the printed expressions but keep full
relative precision at N_B ~ 1e3..1e8; the test suite pins them against
literal transcriptions in cancellation-free parameter ranges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .chernoff import BoundResult

_SERIES_EPS = 1e-18


@dataclass(frozen=True)
class AmpParams:
    """Benchmark parameters for the amplified coherent-state source."""

    n_s: float
    n_a: float
    n_b: float
    eta: float
    copies: int = 1

    def __post_init__(self):
        if min(self.n_s, self.n_a, self.n_b) < 0:
            raise ValueError("photon numbers must be non-negative")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError("reflectivity must lie in [0, 1]")
        if self.copies < 1:
            raise ValueError("copies must be >= 1")

    @classmethod
    def from_gain(cls, n_s: float, gain: float, n_b: float, eta: float, copies: int = 1) -> "AmpParams":
        """Build parameters from a physical amplifier gain, N_A = N_B + g_A / 2."""
        if gain < 1.0:
            raise ValueError("amplifier gain must be >= 1")
        return cls(n_s=n_s, n_a=n_b + 0.5 * gain, n_b=n_b, eta=eta, copies=copies)


@dataclass(frozen=True)
class MaserParams:
    """Benchmark parameters for the attenuated room-temperature maser source."""

    n_s: float
    phi: float
    n_t: float
    n_b: float
    eta: float
    copies: int = 1

    def __post_init__(self):
        if min(self.n_s, self.n_t, self.n_b) < 0:
            raise ValueError("photon numbers must be non-negative")
        if not 0.0 < self.phi <= 1.0:
            raise ValueError("attenuator transmissivity must lie in (0, 1]")
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError("reflectivity must lie in [0, 1]")
        if self.copies < 1:
            raise ValueError("copies must be >= 1")


def _sqrt_gap(n: float) -> float:
    """sqrt(n + 1) - sqrt(n) via the conjugate form."""
    return 1.0 / (math.sqrt(n + 1.0) + math.sqrt(n))


def _xi1(n1: float, n_b: float) -> float:
    """Prefactor coefficient for H1 occupation n1 = eta*N_A + N_B.

    Conjugate form of the printed radical: xi1 equals
    sqrt((N_B+1)(n1+1)) - sqrt(N_B n1), rewritten as
    (1 + N_B + n1) / (sqrt((N_B+1)(n1+1)) + sqrt(N_B n1)).
    """
    return (1.0 + n_b + n1) / (math.sqrt((n_b + 1.0) * (n1 + 1.0)) + math.sqrt(n_b * n1))


def _xi2(n1: float, n_b: float) -> float:
    """Exponent coefficient for H1 occupation n1 = eta*N_A + N_B."""
    numerator = _sqrt_gap(n_b) * _sqrt_gap(n1)
    return numerator / _xi1(n1, n_b)


def _bound(prefactor: float, exponent: float, copies: int) -> BoundResult:
    log_val = math.log(0.5) + math.log(prefactor) - copies * exponent
    return BoundResult(
        value=math.exp(log_val) if log_val > -745.0 else 0.0,
        per_mode_overlap=math.exp(-exponent),
        s_star=0.5,
        copies=copies,
        prefactor=prefactor,
        mean_exponent=exponent,
    )


def qcb_amp(p: AmpParams) -> BoundResult:
    """Error bound for the amplified source, (1/(2 xi1)) exp(-M eta N_S xi2)."""
    n1 = p.eta * p.n_a + p.n_b
    xi1 = _xi1(n1, p.n_b)
    return _bound(1.0 / xi1, p.eta * p.n_s * _xi2(n1, p.n_b), p.copies)


def qcb_maser(p: MaserParams) -> BoundResult:
    """Error bound for the attenuated maser source, (1/(2 chi1)) exp(-M eta phi N_S chi2).

    Same functional form as :func:`qcb_amp` with N_A -> n_T and the source
    energy scaled by the attenuator transmissivity phi.
    """
    n1 = p.eta * p.n_t + p.n_b
    chi1 = _xi1(n1, p.n_b)
    return _bound(1.0 / chi1, p.eta * p.phi * p.n_s * _xi2(n1, p.n_b), p.copies)


def qcb_optical(n_s_eff: float, n_b: float, eta: float, copies: int = 1) -> BoundResult:
    """Noise-free coherent-state bound (1/2) exp(-M eta N_S (sqrt(N_B+1)-sqrt(N_B))^2)."""
    if n_s_eff < 0 or n_b < 0:
        raise ValueError("photon numbers must be non-negative")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("reflectivity must lie in [0, 1]")
    if copies < 1:
        raise ValueError("copies must be >= 1")
    return _bound(1.0, eta * n_s_eff * _sqrt_gap(n_b) ** 2, copies)


def qcb_high_background(n_s_eff: float, n_b: float, eta: float, copies: int = 1) -> BoundResult:
    """Large-background limit (1/2) exp(-M eta N_S / (4 N_B))."""
    if n_s_eff < 0 or n_b <= 0:
        raise ValueError("requires n_s_eff >= 0 and n_b > 0")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("reflectivity must lie in [0, 1]")
    if copies < 1:
        raise ValueError("copies must be >= 1")
    return _bound(1.0, eta * n_s_eff / (4.0 * n_b), copies)


def tmsv_asymptote(n_s: float, n_b: float, eta: float, copies: int = 1) -> BoundResult:
    """Entangled-source asymptote (1/2) exp(-M eta N_S / N_B), for comparison curves."""
    if n_s < 0 or n_b <= 0:
        raise ValueError("requires n_s >= 0 and n_b > 0")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("reflectivity must lie in [0, 1]")
    if copies < 1:
        raise ValueError("copies must be >= 1")
    return _bound(1.0, eta * n_s / n_b, copies)


def _log1p_minus_x(x: float) -> float:
    """log1p(x) - x, by series for small x to keep relative precision."""
    if abs(x) > 0.5:
        return math.log1p(x) - x
    total = 0.0
    term = x
    m = 1
    while True:
        m += 1
        term *= -x
        contribution = term / m
        total += contribution
        if abs(contribution) <= _SERIES_EPS * max(abs(total), 1e-300) or m > 120:
            return total


def _covariance_divergence(excess: float, n_b: float) -> float:
    """(1 + 2 N_B)(g1 - g0) + ln R for H1 occupation N_B + excess.

    Equals 2 (N_B + 1) log1p(e / (N_B + 1)) - 2 N_B log1p(e / N_B); the
    linear parts cancel identically, so for small e / N_B the series form
    of log1p(x) - x is used to retain the O(e^2) remainder.
    """
    if excess == 0.0:
        return 0.0
    a = n_b
    b = n_b + 1.0
    if excess <= 0.5 * a:
        return 2.0 * (b * _log1p_minus_x(excess / b) - a * _log1p_minus_x(excess / a))
    return 2.0 * (b * math.log1p(excess / b) - a * math.log1p(excess / a))


def _delta_g(n1: float, n_b: float) -> float:
    """g0 - g1 = ln(1 + 1/N_B) - ln(1 + 1/n1), cancellation-free."""
    u0 = 0.5 / (n_b + 0.5)
    u1 = 0.5 / (n1 + 0.5)
    return 2.0 * math.atanh((u0 - u1) / (1.0 - u0 * u1))


def _qre_pair(n_signal: float, excess: float, n_b: float, eta: float) -> tuple[float, float]:
    """(D, V) for received signal eta*n_signal and H1 excess noise eta*n_add."""
    if n_b <= 0:
        raise ValueError("relative-entropy forms require n_b > 0")
    n1 = eta * excess + n_b
    g1 = math.log1p(1.0 / n1)
    d = eta * n_signal * g1 + 0.5 * _covariance_divergence(eta * excess, n_b)
    dg = _delta_g(n1, n_b)
    v = n_b * (1.0 + n_b) * dg * dg + eta * n_signal * (2.0 * n_b + 1.0) * g1 * g1
    return d, v


def qre_amp(p: AmpParams) -> tuple[float, float]:
    """(D, V) for the amplified source in the asymmetric setting."""
    return _qre_pair(p.n_s, p.n_a, p.n_b, p.eta)


def qre_maser(p: MaserParams) -> tuple[float, float]:
    """(D, V) for the attenuated maser source: N_A -> n_T and N_S -> phi N_S."""
    return _qre_pair(p.phi * p.n_s, p.n_t, p.n_b, p.eta)


def qre_optical(n_s_eff: float, n_b: float, eta: float) -> tuple[float, float]:
    """(D, V) for the noise-free coherent-state transmitter."""
    if n_s_eff < 0:
        raise ValueError("photon numbers must be non-negative")
    if not 0.0 <= eta <= 1.0:
        raise ValueError("reflectivity must lie in [0, 1]")
    return _qre_pair(n_s_eff, 0.0, n_b, eta)
