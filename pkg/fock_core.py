#!/usr/bin/env python3
"""
Truncated Fock-space representation
Spectrum models f(n) / e_n, generalized factorials in log space, and
normalized coefficient vectors shared by every other module
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Union

import numpy as np
from scipy.special import gammaln

from config import TAIL_TOLERANCE

logger = logging.getLogger(__name__)


class SpectrumError(ValueError):
    """Raised when spectrum parameters make f(n)^2 non-positive"""


class EmptyStateError(ValueError):
    """Raised when a raw coefficient vector has no weight"""


# === Spectrum Models ===

class ModelKind(str, Enum):
    HARMONIC = "harmonic"
    QUADRATIC = "quadratic"
    LINEAR_QUADRATIC = "linear_quadratic"


@dataclass(frozen=True)
class SpectrumModel:
    """
    Deformation function f(n) and spectrum e_n = f(n)^2 * n

    Harmonic:         f(n) = 1,            e_n = n
    Quadratic:        f(n) = sqrt(n),      e_n = n^2
    LinearQuadratic:  f(n) = sqrt(A + Bn), e_n = An + Bn^2
    """

    kind: ModelKind
    A: float = 0.0
    B: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.kind is not ModelKind.LINEAR_QUADRATIC:
            return
        if not (np.isfinite(self.A) and np.isfinite(self.B)):
            raise SpectrumError(f"A and B must be finite, got A={self.A}, B={self.B}")
        if self.B == 0:
            raise SpectrumError("B = 0 reduces the linear-quadratic model to a scaled harmonic one")
        # A + Bn > 0 for every n >= 1 needs a growing f^2 that starts positive
        if self.B < 0 or self.A + self.B <= 0:
            raise SpectrumError(f"f(n)^2 = {self.A} + {self.B}n is not positive for all n >= 1")

    def f_squared(self, n):
        """f(n)^2 for a scalar or array of levels"""
        n = np.asarray(n, dtype=float)
        if self.kind is ModelKind.HARMONIC:
            return np.ones_like(n)
        if self.kind is ModelKind.QUADRATIC:
            return n
        return self.A + self.B * n

    def f(self, n):
        return np.sqrt(self.f_squared(n))

    def e(self, n):
        """Spectrum e_n = f(n)^2 * n; e_0 = 0 in every model"""
        n = np.asarray(n, dtype=float)
        return self.f_squared(n) * n

    @property
    def label(self) -> str:
        if self.kind is ModelKind.LINEAR_QUADRATIC:
            return f"lq:{self.A:g},{self.B:g}"
        return self.kind.value


def make_spectrum(kind: Union[ModelKind, str], A: float = 0.0, B: float = 0.0) -> SpectrumModel:
    """
    Build a validated spectrum model

    Args:
        kind: Harmonic, Quadratic or LinearQuadratic
        A: Linear coefficient (LinearQuadratic only)
        B: Quadratic coefficient (LinearQuadratic only, B != 0)

    Returns:
        SpectrumModel; Harmonic and Quadratic ignore A and B
    """
    kind = ModelKind(kind)
    if kind is not ModelKind.LINEAR_QUADRATIC:
        return SpectrumModel(kind)
    return SpectrumModel(kind, float(A), float(B))


HARMONIC = SpectrumModel(ModelKind.HARMONIC)
QUADRATIC = SpectrumModel(ModelKind.QUADRATIC)


# === Generalized Factorials ===

def log_e_factorials(model: SpectrumModel, levels: int) -> np.ndarray:
    """ln(e_n!) = sum_{k=1}^{n} ln e_k for n = 0..levels"""
    if levels < 0:
        raise ValueError(f"levels must be >= 0, got {levels}")
    logs = np.zeros(levels + 1)
    if levels > 0:
        logs[1:] = np.cumsum(np.log(model.e(np.arange(1, levels + 1))))
    return logs


def log_e_factorial(model: SpectrumModel, n: int) -> float:
    return float(log_e_factorials(model, n)[-1])


def log_f_factorials(model: SpectrumModel, levels: int) -> np.ndarray:
    """ln(f(n)!) = sum_{k=1}^{n} ln f(k); ln n! + 2 ln f(n)! = ln e_n!"""
    if levels < 0:
        raise ValueError(f"levels must be >= 0, got {levels}")
    logs = np.zeros(levels + 1)
    if levels > 0:
        logs[1:] = 0.5 * np.cumsum(np.log(model.f_squared(np.arange(1, levels + 1))))
    return logs


def log_f_factorial(model: SpectrumModel, n: int) -> float:
    return float(log_f_factorials(model, n)[-1])


def ladder_matrix(model: SpectrumModel, levels: int) -> np.ndarray:
    """Truncated A = a f(a^dag a) with <n-1|A|n> = sqrt(e_n)"""
    return np.diag(np.sqrt(model.e(np.arange(1, levels + 1))), k=1)


# === Fock Expansions ===

@dataclass(frozen=True, eq=False)
class FockExpansion:
    """
    Normalized coefficients c_0..c_N of a single-mode state

    tail_weight is |last raw term|^2 / sum |raw terms|^2, a proxy for the
    probability mass beyond level N. log_norm is ln of the raw Euclidean norm.
    """

    coeffs: np.ndarray
    tail_weight: float = 0.0
    log_norm: float = 0.0
    tolerance: float = field(default=TAIL_TOLERANCE, compare=False)

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @property
    def converged(self) -> bool:
        return self.tail_weight <= self.tolerance

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.coeffs) ** 2

    @property
    def mean_number(self) -> float:
        return float(np.dot(np.arange(len(self.coeffs)), self.probabilities))

    def padded(self, levels: int) -> np.ndarray:
        """Coefficients zero-padded (never cut) to levels + 1 entries"""
        if levels < self.truncation:
            raise ValueError(f"cannot pad level-{self.truncation} expansion down to {levels}")
        out = np.zeros(levels + 1, dtype=complex)
        out[: len(self.coeffs)] = self.coeffs
        return out


def normalize(raw: Sequence[complex], log_offset: float = 0.0,
              tolerance: float = TAIL_TOLERANCE) -> FockExpansion:
    """
    Divide raw amplitudes by their Euclidean norm

    Args:
        raw: Raw amplitudes; the true raw terms are raw * exp(log_offset)
        log_offset: Log scale already factored out of raw by the caller
        tolerance: Tail weight above which the expansion reports non-convergence

    Returns:
        FockExpansion with tail weight and log of the raw norm
    """
    raw = np.asarray(raw, dtype=complex)
    if raw.ndim != 1 or raw.size == 0:
        raise EmptyStateError("raw amplitudes must be a non-empty vector")
    if not np.all(np.isfinite(raw)):
        raise ValueError("raw amplitudes contain non-finite values")

    peak = np.max(np.abs(raw))
    if peak == 0:
        raise EmptyStateError("all raw amplitudes are zero; the state is empty")

    scaled = raw / peak
    norm = np.linalg.norm(scaled)
    coeffs = scaled / norm
    tail_weight = float(np.abs(coeffs[-1]) ** 2)
    log_norm = float(log_offset + np.log(peak) + np.log(norm))
    return FockExpansion(coeffs, tail_weight=tail_weight, log_norm=log_norm, tolerance=tolerance)


def normalize_log_terms(log_terms: np.ndarray, tolerance: float = TAIL_TOLERANCE) -> FockExpansion:
    """Normalize amplitudes given as complex logarithms (ln|c| + i arg c)"""
    log_terms = np.asarray(log_terms, dtype=complex)
    # -inf is an exact zero amplitude; +inf or nan is an overflowed term
    zero = np.isneginf(log_terms.real)
    finite = np.isfinite(log_terms.real) & np.isfinite(log_terms.imag)
    if not np.all(zero | finite):
        raise ValueError("raw amplitudes overflowed or are nan; cannot normalize")
    if not np.any(finite):
        raise EmptyStateError("all raw amplitudes are zero; the state is empty")
    shift = float(np.max(log_terms.real[finite]))
    raw = np.zeros(len(log_terms), dtype=complex)
    raw[finite] = np.exp(log_terms[finite] - shift)
    return normalize(raw, log_offset=shift, tolerance=tolerance)


def fock_basis(n: int, levels: int) -> FockExpansion:
    """Number state |n> inside a level-`levels` truncation"""
    if not 0 <= n <= levels:
        raise ValueError(f"level {n} outside truncation 0..{levels}")
    raw = np.zeros(levels + 1, dtype=complex)
    raw[n] = 1.0
    return normalize(raw)


def inner_product(s1: FockExpansion, s2: FockExpansion) -> complex:
    """<s1|s2>, zero-padding the shorter expansion"""
    levels = max(s1.truncation, s2.truncation)
    return complex(np.vdot(s1.padded(levels), s2.padded(levels)))


def log_factorials(levels: int) -> np.ndarray:
    """ln n! for n = 0..levels"""
    return gammaln(np.arange(levels + 1) + 1.0)
