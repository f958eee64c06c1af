#!/usr/bin/env python3
"""
Special functions over complex arguments
Hermite polynomials, terminating Gauss hypergeometric sums, Pochhammer
symbols and log-binomials
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple, Union

import mpmath
import numpy as np
from scipy.special import gammaln

from config import HYP_GUARD_DIGITS, HYP_MAX_RETRIES, HYP_MIN_DPS

logger = logging.getLogger(__name__)


class HypergeometricDomainError(ValueError):
    """Raised when a terminating 2F1 hits a zero denominator"""


# === Hermite Polynomials ===

def scaled_hermite_sequence(n: int, x: complex) -> Tuple[np.ndarray, np.ndarray]:
    """
    H_0(x)..H_n(x) by H_{k+1} = 2x H_k - 2k H_{k-1}, as mantissas with per-entry log scales

    The running pair is rescaled after every step, so
    H_k = mantissas[k] * exp(log_scales[k]) stays representable for any n.
    """
    if n < 0:
        raise ValueError(f"Hermite degree must be >= 0, got {n}")
    x = complex(x)
    mantissas = np.zeros(n + 1, dtype=complex)
    log_scales = np.zeros(n + 1)
    mantissas[0] = 1.0
    if n == 0:
        return mantissas, log_scales

    prev, cur = 1.0 + 0.0j, 2.0 * x
    mantissas[1] = cur
    log_scale = 0.0
    for k in range(1, n):
        prev, cur = cur, 2.0 * x * cur - 2.0 * k * prev
        scale = max(abs(prev), abs(cur))
        if scale > 0:
            prev /= scale
            cur /= scale
            log_scale += math.log(scale)
        mantissas[k + 1] = cur
        log_scales[k + 1] = log_scale
    return mantissas, log_scales


def hermite_sequence(n: int, x: complex) -> np.ndarray:
    """H_0(x)..H_n(x) assembled; overflows to inf past a few hundred degrees"""
    mantissas, log_scales = scaled_hermite_sequence(n, x)
    with np.errstate(over="ignore", invalid="ignore"):
        return mantissas * np.exp(log_scales)


def hermite(n: int, x: complex) -> complex:
    """Physicists' Hermite polynomial H_n(x), unscaled"""
    return complex(hermite_sequence(n, x)[n])


# === Terminating Gauss Hypergeometric Series ===

@dataclass(frozen=True)
class HypergeometricSpec:
    """2F1[-n, b; c; x], a polynomial of degree n in x"""

    n: int
    b: complex
    c: complex
    x: complex

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        c = complex(self.c)
        # (c)_k appears for k = 0..n-1 only
        if c.imag == 0 and c.real <= 0 and c.real == math.floor(c.real) and c.real >= -(self.n - 1):
            raise HypergeometricDomainError(
                f"c = {c.real:g} is a non-positive integer inside the {self.n + 1}-term sum"
            )

    def term_ratio(self, k: int) -> complex:
        """t_{k+1} / t_k"""
        return ((k - self.n) * (self.b + k)) / ((self.c + k) * (k + 1)) * self.x


def _log10_term_peak(spec: HypergeometricSpec) -> float:
    """log10 of the largest |t_k|, scanned in double precision"""
    log_term = 0.0
    peak = 0.0
    for k in range(spec.n):
        ratio = abs(spec.term_ratio(k))
        if ratio == 0:
            break
        log_term += math.log10(ratio)
        peak = max(peak, log_term)
    return peak


def _accumulate(spec: HypergeometricSpec, dps: int) -> mpmath.mpc:
    with mpmath.workdps(dps):
        n = spec.n
        b = mpmath.mpc(spec.b)
        c = mpmath.mpc(spec.c)
        x = mpmath.mpc(spec.x)
        term = mpmath.mpc(1)
        total = mpmath.mpc(1)
        for k in range(n):
            term *= (k - n) * (b + k) / ((c + k) * (k + 1)) * x
            total += term
        return total


def gauss_2f1_terminating(spec: HypergeometricSpec) -> complex:
    """
    Literal finite sum of 2F1[-n, b; c; x] in order of increasing k

    Terms are accumulated through the ratio t_{k+1}/t_k. At x = 2 the terms
    reach ~3^n while the sum stays O(1), so the sum runs at an mpmath working
    precision sized from the largest term and is rounded back to a double.

    Args:
        spec: Series parameters

    Returns:
        Complex value of the polynomial
    """
    if spec.n == 0:
        return 1.0 + 0.0j

    peak = _log10_term_peak(spec)
    dps = max(HYP_MIN_DPS, int(math.ceil(peak)) + HYP_GUARD_DIGITS)

    for attempt in range(HYP_MAX_RETRIES + 1):
        total = _accumulate(spec, dps)
        magnitude = abs(total)
        if magnitude == 0:
            return 0.0 + 0.0j
        # Digits left after cancelling terms of size 10^peak down to |total|
        kept = dps - (peak - float(mpmath.log10(magnitude)))
        if kept >= 17:
            break
        logger.debug(f"2F1 n={spec.n} kept only {kept:.1f} digits at dps={dps}, retrying")
        dps += int(math.ceil(17 - kept)) + HYP_GUARD_DIGITS
    else:
        logger.warning(f"⚠️ 2F1 n={spec.n} b={spec.b} c={spec.c} did not reach double precision")

    return complex(total)


# === Pochhammer Symbols and Binomials ===

def pochhammer(q: complex, n: int) -> complex:
    """Rising factorial (q)_n = q (q+1) ... (q+n-1); (q)_0 = 1"""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    result = 1.0 + 0.0j
    for k in range(n):
        result *= q + k
    return complex(result)


def log_pochhammer(q: float, n: int) -> float:
    """ln (q)_n for real q > 0"""
    if q <= 0:
        raise ValueError(f"log_pochhammer needs q > 0, got {q}")
    return float(gammaln(q + n) - gammaln(q))


def log_binomial(n: Union[int, np.ndarray], q: Union[int, np.ndarray]) -> Union[float, np.ndarray]:
    """ln C(n, q) via log-gamma differences, elementwise over broadcast arrays"""
    n_arr = np.asarray(n, dtype=float)
    q_arr = np.asarray(q, dtype=float)
    if np.any(q_arr < 0) or np.any(q_arr > n_arr):
        raise ValueError(f"binomial index q={q} outside 0..{n}")
    logs = gammaln(n_arr + 1.0) - gammaln(q_arr + 1.0) - gammaln(n_arr - q_arr + 1.0)
    return float(logs) if logs.ndim == 0 else logs
