#!/usr/bin/env python3
"""
Quadrature moments, dispersions and position-space densities
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from fock_core import FockExpansion

logger = logging.getLogger(__name__)


class QuadratureConvention(str, Enum):
    """
    HALF:  x = (a + a^dag) / 2,       coherent-state (dx)^2 = 1/4
    SQRT2: x = (a + a^dag) / sqrt(2), coherent-state (dx)^2 = 1/2
    """

    HALF = "half"
    SQRT2 = "sqrt2"

    @property
    def scale(self) -> float:
        return 0.5 if self is QuadratureConvention.HALF else 1.0 / math.sqrt(2.0)

    @property
    def minimal_product(self) -> float:
        return self.scale ** 4


class LadderMoments(NamedTuple):
    mean_a: complex
    mean_a2: complex
    mean_n: float


@dataclass(frozen=True)
class QuadratureReport:
    mean_x: float
    mean_p: float
    var_x: float
    var_p: float
    product: float
    convention: QuadratureConvention


def ladder_moments(state: FockExpansion) -> LadderMoments:
    """<a>, <a^2> and <a^dag a> of a normalized expansion"""
    c = state.coeffs
    n = np.arange(len(c))
    mean_a = complex(np.sum(np.conj(c[:-1]) * np.sqrt(n[1:]) * c[1:]))
    mean_a2 = complex(np.sum(np.conj(c[:-2]) * np.sqrt(n[2:] * (n[2:] - 1)) * c[2:]))
    mean_n = float(np.sum(n * np.abs(c) ** 2))
    return LadderMoments(mean_a, mean_a2, mean_n)


def quadrature_report(state: FockExpansion,
                      convention: QuadratureConvention = QuadratureConvention.SQRT2) -> QuadratureReport:
    """
    Means and variances of x = s(a + a^dag) and p = s(a - a^dag)/i

    The second moments use [a, a^dag] = 1, so the truncation edge does not
    leak into the vacuum term:
        <x^2> = s^2 (<a^2> + <a^2>* + 2<a^dag a> + 1)
        <p^2> = s^2 (2<a^dag a> + 1 - <a^2> - <a^2>*)

    Args:
        state: Normalized expansion
        convention: Quadrature scale s

    Returns:
        QuadratureReport
    """
    convention = QuadratureConvention(convention)
    s = convention.scale
    moments = ladder_moments(state)

    mean_x = 2.0 * s * moments.mean_a.real
    mean_p = 2.0 * s * moments.mean_a.imag
    two_re_a2 = 2.0 * moments.mean_a2.real
    second_x = s * s * (two_re_a2 + 2.0 * moments.mean_n + 1.0)
    second_p = s * s * (2.0 * moments.mean_n + 1.0 - two_re_a2)

    var_x = second_x - mean_x ** 2
    var_p = second_p - mean_p ** 2
    return QuadratureReport(mean_x, mean_p, var_x, var_p, var_x * var_p, convention)


def photon_statistics(state: FockExpansion) -> Tuple[float, float]:
    """Mean and variance of the photon number"""
    probs = state.probabilities
    n = np.arange(len(probs))
    mean = float(np.dot(n, probs))
    return mean, float(np.dot(n * n, probs) - mean ** 2)


# === Position Representation ===

def hermite_functions(levels: int, x_grid: Sequence[float]) -> np.ndarray:
    """
    phi_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) exp(-x^2/2), rows n = 0..levels

    Uses phi_{n+1} = x sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_{n-1}, which
    stays bounded where H_n and n! separately overflow.
    """
    x = np.asarray(x_grid, dtype=float)
    phi = np.zeros((levels + 1, x.size))
    phi[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if levels >= 1:
        phi[1] = math.sqrt(2.0) * x * phi[0]
    for n in range(1, levels):
        phi[n + 1] = x * math.sqrt(2.0 / (n + 1)) * phi[n] - math.sqrt(n / (n + 1)) * phi[n - 1]
    return phi


def position_density(state: FockExpansion, x_grid: Sequence[float]) -> np.ndarray:
    """|psi(x)|^2 with psi(x) = sum_n c_n phi_n(x) in the undeformed oscillator basis"""
    x = np.atleast_1d(np.asarray(x_grid, dtype=float))
    psi = state.coeffs @ hermite_functions(state.truncation, x)
    return np.abs(psi) ** 2


def density_fwhm(state: FockExpansion, x_grid: Sequence[float]) -> float:
    """
    Full width at half maximum of |psi(x)|^2

    The grid brackets the peak and the half-maximum crossings; the peak is
    refined with a bounded minimizer and the crossings with Brent's method.

    Args:
        state: Normalized expansion
        x_grid: Increasing grid wide enough to contain both half-maximum crossings

    Returns:
        Width between the crossings nearest to the peak
    """
    x = np.asarray(x_grid, dtype=float)
    density = position_density(state, x)

    def at(point: float) -> float:
        return float(position_density(state, [point])[0])

    top = int(np.argmax(density))
    lo, hi = x[max(top - 1, 0)], x[min(top + 1, len(x) - 1)]
    peak = minimize_scalar(lambda p: -at(p), bounds=(lo, hi), method="bounded",
                           options={"xatol": 1e-12})
    half = 0.5 * max(-float(peak.fun), float(density[top]))

    left = top
    while left > 0 and density[left] >= half:
        left -= 1
    right = top
    while right < len(x) - 1 and density[right] >= half:
        right += 1
    if density[left] >= half or density[right] >= half:
        raise ValueError("x grid does not contain both half-maximum crossings")

    def excess(point: float) -> float:
        return at(point) - half

    x_left = brentq(excess, x[left], x[left + 1], xtol=1e-13)
    x_right = brentq(excess, x[right - 1], x[right], xtol=1e-13)
    return float(x_right - x_left)
