"""Special functions shared by the detection formulas.

erfc is delegated to scipy's implementation (relative error below 1e-14 on
the ranges used here); the inverse is an accurate seed refined by Newton
iterations on erfc itself so the round trip closes to 1e-12.
"""

from __future__ import annotations

import math

import scipy.special as sp

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)


def erfc(x: float) -> float:
    """Complementary error function."""
    return float(sp.erfc(x))


def erfc_inv(y: float) -> float:
    """Inverse of erfc on (0, 2), Newton-refined to round-trip accuracy 1e-12."""
    if not 0.0 < y < 2.0:
        raise ValueError("erfc_inv is defined on the open interval (0, 2)")
    x = float(sp.erfcinv(y))
    for _ in range(3):
        residual = float(sp.erfc(x)) - y
        if residual == 0.0:
            break
        # d/dx erfc(x) = -2/sqrt(pi) exp(-x^2)
        step = residual * math.exp(x * x) / _TWO_OVER_SQRT_PI
        x_new = x + step
        if x_new == x:
            break
        x = x_new
    return x + 0.0


def normal_quantile(epsilon: float) -> float:
    """Standard normal quantile, Phi^{-1}(eps) = -sqrt(2) * erfc_inv(2 eps)."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError("quantile argument must lie in (0, 1)")
    return -math.sqrt(2.0) * erfc_inv(2.0 * epsilon) + 0.0
