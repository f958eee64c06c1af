#!/usr/bin/env python3
"""
State builders
Canonical coherent / squeezed states, nonlinear coherent states, nonlinear
squeezed states from the three-term recurrence, and the closed-form
recurrence solutions for the quadratic and linear-plus-quadratic spectra
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from config import DEFAULT_LEVELS, RENORMALIZE_EVERY
from fock_core import (
    FockExpansion,
    ModelKind,
    SpectrumModel,
    fock_basis,
    ladder_matrix,
    log_e_factorials,
    log_f_factorials,
    log_factorials,
    make_spectrum,
    normalize_log_terms,
)
from special_fn import HypergeometricSpec, gauss_2f1_terminating, log_pochhammer, scaled_hermite_sequence

logger = logging.getLogger(__name__)


def _check_gamma(gamma: complex):
    if abs(gamma) >= 1:
        raise ValueError(f"squeezed states need |gamma| < 1, got |gamma| = {abs(gamma):g}")


def _report(state: FockExpansion, what: str) -> FockExpansion:
    if not state.converged:
        logger.warning(
            f"⚠️ {what} not converged at N={state.truncation}: "
            f"tail weight {state.tail_weight:.3e} > {state.tolerance:.0e}"
        )
    else:
        logger.debug(f"{what} built at N={state.truncation}, tail weight {state.tail_weight:.3e}")
    return state


def _complex_log(values: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(values, dtype=complex))


# === Recurrence Table ===

@dataclass(frozen=True, eq=False)
class RecurrenceTable:
    """
    Solution I(z, gamma, n), n = 0..N, of
        I_{n+1} - z I_n + gamma n f(n)^2 I_{n-1} = 0,  I_0 = 1,  I_1 = z

    Stored as mantissas with per-entry log scales: I_n = mantissas[n] * exp(log_scales[n]).
    """

    mantissas: np.ndarray
    log_scales: np.ndarray
    z: complex
    gamma: complex
    model: SpectrumModel

    @property
    def levels(self) -> int:
        return len(self.mantissas) - 1

    @property
    def values(self) -> np.ndarray:
        """Assembled I_n; may overflow for very large N, use scaled_coefficients instead"""
        return self.mantissas * np.exp(self.log_scales)

    def scaled_coefficients(self) -> np.ndarray:
        """I_n / sqrt(e_n!) assembled in log space"""
        logs = self.log_scales - 0.5 * log_e_factorials(self.model, self.levels)
        return self.mantissas * np.exp(logs)

    def residuals(self) -> np.ndarray:
        """
        |I_{n+1} - z I_n + gamma n f^2(n) I_{n-1}| / max(1, |I_{n+1}|) for n = 1..N-1,
        evaluated in the scale of I_{n+1}
        """
        f2 = self.model.f_squared(np.arange(self.levels + 1))
        out = np.zeros(max(self.levels - 1, 0))
        for n in range(1, self.levels):
            ref = self.log_scales[n + 1]
            nxt = self.mantissas[n + 1]
            cur = self.mantissas[n] * math.exp(self.log_scales[n] - ref)
            prev = self.mantissas[n - 1] * math.exp(self.log_scales[n - 1] - ref)
            residual = abs(nxt - self.z * cur + self.gamma * n * f2[n] * prev)
            # max(1, |I_{n+1}|) compared in log space
            if nxt != 0 and ref + math.log(abs(nxt)) >= 0:
                out[n - 1] = residual / abs(nxt)
            else:
                out[n - 1] = residual * float(np.exp(ref))
        return out


def iterate_recurrence(z: complex, gamma: complex, model: SpectrumModel, levels: int,
                       seeds: Tuple[complex, complex]) -> RecurrenceTable:
    """
    Forward iteration of the three-term recurrence from arbitrary seeds

    The running pair is rescaled every RENORMALIZE_EVERY steps and the log
    of the scale is accumulated, so I_n never overflows.
    """
    if levels < 1:
        raise ValueError(f"recurrence needs N >= 1, got {levels}")
    z = complex(z)
    gamma = complex(gamma)
    f2 = model.f_squared(np.arange(levels + 1))

    mantissas = np.zeros(levels + 1, dtype=complex)
    log_scales = np.zeros(levels + 1)
    prev, cur = complex(seeds[0]), complex(seeds[1])
    mantissas[0], mantissas[1] = prev, cur
    log_scale = 0.0

    for n in range(1, levels):
        prev, cur = cur, z * cur - gamma * n * f2[n] * prev
        if (n + 1) % RENORMALIZE_EVERY == 0:
            scale = max(abs(prev), abs(cur))
            if scale > 0 and math.isfinite(scale):
                prev /= scale
                cur /= scale
                log_scale += math.log(scale)
        mantissas[n + 1] = cur
        log_scales[n + 1] = log_scale

    return RecurrenceTable(mantissas, log_scales, z, gamma, model)


def solve_recurrence(z: complex, gamma: complex, model: SpectrumModel,
                     levels: int = DEFAULT_LEVELS) -> RecurrenceTable:
    """
    Solve I_{n+1} = z I_n - gamma n f(n)^2 I_{n-1} with I_0 = 1, I_1 = z

    Args:
        z: Complex eigenvalue
        gamma: Complex squeezing parameter
        model: Spectrum model supplying f(n)^2
        levels: Highest level N >= 1

    Returns:
        RecurrenceTable with entries n = 0..N
    """
    return iterate_recurrence(z, gamma, model, levels, seeds=(1.0, z))


# === Canonical States ===

def build_coherent_canonical(z: complex, levels: int = DEFAULT_LEVELS) -> FockExpansion:
    """|z> with raw terms z^n / sqrt(n!)"""
    if levels < 0:
        raise ValueError(f"levels must be >= 0, got {levels}")
    z = complex(z)
    if z == 0:
        return fock_basis(0, levels)
    n = np.arange(levels + 1)
    log_terms = n * cmath.log(z) - 0.5 * log_factorials(levels)
    return _report(normalize_log_terms(log_terms), f"coherent state z={z}")


def build_squeezed_canonical(z: complex, gamma: complex, levels: int = DEFAULT_LEVELS) -> FockExpansion:
    """|z, gamma> with raw terms (gamma/2)^{n/2} H_n(z / sqrt(2 gamma)) / sqrt(n!)"""
    gamma = complex(gamma)
    if gamma == 0:
        raise ValueError("gamma = 0 is the coherent state; use build_coherent_canonical")
    _check_gamma(gamma)
    z = complex(z)
    # Principal branches; sqrt(gamma/2) * 2 / sqrt(2 gamma) = 1 keeps I_1 = z
    half_root = cmath.sqrt(gamma / 2)
    mantissas, log_scales = scaled_hermite_sequence(levels, z / cmath.sqrt(2 * gamma))
    n = np.arange(levels + 1)
    log_terms = (n * cmath.log(half_root) + _complex_log(mantissas) + log_scales
                 - 0.5 * log_factorials(levels))
    return _report(normalize_log_terms(log_terms), f"squeezed state z={z} gamma={gamma}")


# === Nonlinear States ===

def build_nonlinear_coherent(z: complex, model: SpectrumModel, levels: int = DEFAULT_LEVELS,
                             form: str = "spectrum") -> FockExpansion:
    """
    Nonlinear coherent state |z, f>, eigenstate of A = a f(a^dag a)

    Args:
        z: Complex eigenvalue
        model: Spectrum model
        levels: Highest level N
        form: "spectrum" for z^n / sqrt(e_n!) or "deformation" for z^n / (sqrt(n!) f(n)!)

    Returns:
        Normalized FockExpansion
    """
    if levels < 0:
        raise ValueError(f"levels must be >= 0, got {levels}")
    z = complex(z)
    if z == 0:
        return fock_basis(0, levels)

    n = np.arange(levels + 1)
    if form == "spectrum":
        log_denominator = 0.5 * log_e_factorials(model, levels)
    elif form == "deformation":
        log_denominator = 0.5 * log_factorials(levels) + log_f_factorials(model, levels)
    else:
        raise ValueError(f"unknown coherent-state form '{form}'")

    log_terms = n * cmath.log(z) - log_denominator
    return _report(normalize_log_terms(log_terms), f"{model.label} coherent state z={z}")


def build_nonlinear_squeezed(z: complex, gamma: complex, model: SpectrumModel,
                             levels: int = DEFAULT_LEVELS) -> FockExpansion:
    """Nonlinear squeezed state |z, gamma, f> with raw terms I(z, gamma, n) / sqrt(e_n!)"""
    _check_gamma(complex(gamma))
    table = solve_recurrence(z, gamma, model, levels)
    log_terms = _complex_log(table.mantissas) + table.log_scales - 0.5 * log_e_factorials(model, levels)
    return _report(normalize_log_terms(log_terms), f"{model.label} squeezed state z={z} gamma={gamma}")


def build_state(z: complex, gamma: complex, model: SpectrumModel, levels: int = DEFAULT_LEVELS) -> FockExpansion:
    """Nonlinear coherent state for gamma = 0, nonlinear squeezed state otherwise"""
    if complex(gamma) == 0:
        return build_nonlinear_coherent(z, model, levels)
    return build_nonlinear_squeezed(z, gamma, model, levels)


# === Closed Forms ===

def _phase_i(n: int) -> complex:
    return (1j) ** (n % 4)


def closed_form_quadratic(z: complex, gamma: complex, n: int) -> complex:
    """
    I(z, gamma, n) = i^n gamma^{n/2} n! 2F1[-n, 1/2 + iz/(2 sqrt(gamma)); 1; 2] for f(n) = sqrt(n)
    """
    gamma = complex(gamma)
    if gamma == 0:
        raise ValueError("closed form divides by sqrt(gamma); use the recurrence for gamma = 0")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    root = cmath.sqrt(gamma)
    b = 0.5 + 1j * complex(z) / (2 * root)
    series = gauss_2f1_terminating(HypergeometricSpec(n, b, 1.0, 2.0))
    log_prefactor = n * cmath.log(root) + math.lgamma(n + 1)
    return _phase_i(n) * cmath.exp(log_prefactor) * series


def closed_form_linear_quadratic(z: complex, gamma: complex, A: float, B: float, n: int) -> complex:
    """
    I(z, gamma, n) for f(n) = sqrt(A + Bn):
        i^n (gamma B)^{n/2} (1 + A/B)^{(n)} 2F1[-n, 1/2 + A/(2B) + iz/(2 sqrt(gamma B)); 1 + A/B; 2]
    """
    gamma = complex(gamma)
    if gamma == 0:
        raise ValueError("closed form divides by sqrt(gamma B); use the recurrence for gamma = 0")
    if B == 0:
        raise ValueError("B = 0 is outside the linear-quadratic family")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    make_spectrum(ModelKind.LINEAR_QUADRATIC, A, B)

    root = cmath.sqrt(gamma * B)
    shift = 1.0 + A / B
    b = 0.5 + A / (2 * B) + 1j * complex(z) / (2 * root)
    series = gauss_2f1_terminating(HypergeometricSpec(n, b, shift, 2.0))

    # shift = 1 + A/B > 0 for every valid linear-quadratic model
    log_prefactor = n * cmath.log(root) + log_pochhammer(shift, n)
    return _phase_i(n) * cmath.exp(log_prefactor) * series


def closed_form_table(z: complex, gamma: complex, model: SpectrumModel, levels: int) -> np.ndarray:
    """Closed-form I_n / sqrt(e_n!) for n = 0..levels (quadratic and linear-quadratic models)"""
    if model.kind is ModelKind.QUADRATIC:
        values = [closed_form_quadratic(z, gamma, n) for n in range(levels + 1)]
    elif model.kind is ModelKind.LINEAR_QUADRATIC:
        values = [closed_form_linear_quadratic(z, gamma, model.A, model.B, n) for n in range(levels + 1)]
    else:
        raise ValueError(f"no closed form for the {model.label} model")
    return np.asarray(values) * np.exp(-0.5 * log_e_factorials(model, levels))


# === Eigenvalue Checks ===

def eigen_residual(state: FockExpansion, model: SpectrumModel, z: complex,
                   gamma: complex = 0.0, skip_top: int = 2) -> float:
    """
    || (A + gamma A^dag) c - z c || over the rows below the truncation edge

    Args:
        state: Normalized expansion
        model: Spectrum model defining A
        z: Expected eigenvalue
        gamma: Squeezing parameter (0 checks the coherent eigenvalue equation)
        skip_top: Number of top levels excluded from the norm

    Returns:
        Euclidean norm of the residual on levels 0..N-skip_top
    """
    ladder = ladder_matrix(model, state.truncation)
    operator = ladder + complex(gamma) * ladder.conj().T
    residual = operator @ state.coeffs - complex(z) * state.coeffs
    keep = max(state.truncation + 1 - skip_top, 0)
    return float(np.linalg.norm(residual[:keep]))
