"""
Lobachevsky function

Λ(θ) = −∫₀^θ ln|2 sin t| dt = ½ Cl₂(2θ), the sign convention under which the
regular ideal tetrahedron has positive volume 3Λ(π/3) ≈ 1.01494.

Evaluation reduces θ modulo π into [−π/2, π/2] (Λ is odd and π-periodic) and
sums the Clausen expansion around 0 with its log-singular part split off:

    Cl₂(φ) = φ − φ ln|φ| + Σ_{k≥1} |B_2k| φ^(2k+1) / (2k (2k+1)!),  |φ| < 2π

For |φ| ≤ π the tail ratio is at most 1/4, so 30 terms are exact to rounding.
"""

import math
from typing import Union

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import bernoulli, factorial

_TERMS = 30

_bern = bernoulli(2 * _TERMS)
# coefficient of (φ²)^k inside φ·Σ c_k φ^{2k}
_COEFFS = np.zeros(_TERMS + 1)
for _k in range(1, _TERMS + 1):
    _COEFFS[_k] = abs(_bern[2 * _k]) / (2 * _k * factorial(2 * _k + 1, exact=False))
del _k, _bern

ArrayLike = Union[float, np.ndarray]


def clausen2(phi: ArrayLike) -> ArrayLike:
    """
    Clausen function Cl₂(φ) = −∫₀^φ ln|2 sin(t/2)| dt

    Args:
        phi: Angle or array of angles (any real values)

    Returns:
        Cl₂ evaluated elementwise, float for scalar input
    """
    phi_arr = np.asarray(phi, dtype=float)
    # Cl₂ is odd and 2π-periodic
    reduced = phi_arr - 2.0 * math.pi * np.round(phi_arr / (2.0 * math.pi))

    with np.errstate(divide="ignore", invalid="ignore"):
        log_part = np.where(reduced == 0.0, 0.0, reduced * np.log(np.abs(reduced)))
    series = reduced * P.polyval(reduced * reduced, _COEFFS)
    value = reduced - log_part + series

    if np.ndim(value) == 0:
        return float(value)
    return value


def lobachevsky(theta: ArrayLike) -> ArrayLike:
    """
    Lobachevsky function Λ(θ) = ½ Cl₂(2θ)

    Odd, π-periodic, zero at multiples of π/2, maximal at π/6.

    Args:
        theta: Angle or array of angles

    Returns:
        Λ(θ) elementwise, float for scalar input
    """
    theta_arr = np.asarray(theta, dtype=float)
    reduced = theta_arr - math.pi * np.round(theta_arr / math.pi)
    value = 0.5 * np.asarray(clausen2(2.0 * reduced))

    if np.ndim(value) == 0:
        return float(value)
    return value
