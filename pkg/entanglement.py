#!/usr/bin/env python3
"""
Beam-splitter entanglement
Fock (x) vacuum splitting, two-mode output assembly, reduced density matrix,
and linear entropy by the quadruple series and by an explicit partial trace
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from config import (
    CONVERGENCE_STEP,
    CONVERGENCE_TOLERANCE,
    DEFAULT_LEVELS,
    DEFAULT_PHI,
    DEFAULT_THETA,
    EIGEN_TOLERANCE,
    ENTROPY_CLAMP_TOLERANCE,
    NORM_TOLERANCE,
    SPOT_CHECK_EVERY,
    SPOT_CHECK_TOLERANCE,
)
from fock_core import FockExpansion, SpectrumModel, normalize
from special_fn import log_binomial
from states import RecurrenceTable, build_state, solve_recurrence
from sweep_runner import run_ordered

logger = logging.getLogger(__name__)


# === Beam Splitter ===

@dataclass(frozen=True)
class BeamSplitterConfig:
    """Beam splitter with t = cos(theta/2), r = -exp(i phi) sin(theta/2)"""

    theta: float = DEFAULT_THETA
    phi: float = DEFAULT_PHI

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"beam-splitter angle must lie in [0, pi], got {self.theta}")

    @property
    def t(self) -> complex:
        return complex(math.cos(self.theta / 2.0))

    @property
    def r(self) -> complex:
        return -complex(math.cos(self.phi), math.sin(self.phi)) * math.sin(self.theta / 2.0)

    @property
    def transmissivity(self) -> float:
        """|t|, independent of phi"""
        return abs(math.cos(self.theta / 2.0))

    @property
    def reflectivity(self) -> float:
        """|r|, independent of phi"""
        return abs(math.sin(self.theta / 2.0))


def _powers(base: complex, levels: int) -> np.ndarray:
    """base^0..base^levels with base^0 = 1 even for base = 0"""
    out = np.ones(levels + 1, dtype=complex)
    if levels > 0:
        out[1:] = np.cumprod(np.full(levels, base, dtype=complex))
    return out


def _half_log_binomials(levels: int) -> Tuple[np.ndarray, np.ndarray]:
    """0.5 ln C(q+m, q) on the (q, m) grid and the mask q + m <= levels"""
    q, m = np.meshgrid(np.arange(levels + 1), np.arange(levels + 1), indexing="ij")
    mask = q + m <= levels
    logs = 0.5 * log_binomial(q + m, q)
    return np.where(mask, logs, -np.inf), mask


def split_fock(n: int, cfg: BeamSplitterConfig) -> List[Tuple[int, complex]]:
    """
    B(|n> (x) |0>) = sum_q C(n, q)^{1/2} t^q r^{n-q} |q> (x) |n-q>

    Returns:
        (q, amplitude) pairs for q = 0..n
    """
    if n < 0:
        raise ValueError(f"Fock level must be >= 0, got {n}")
    t_pows = _powers(cfg.t, n)
    r_pows = _powers(cfg.r, n)
    return [(q, complex(math.exp(0.5 * log_binomial(n, q)) * t_pows[q] * r_pows[n - q]))
            for q in range(n + 1)]


# === Two-Mode Output ===

@dataclass(frozen=True, eq=False)
class TwoModeState:
    """Amplitudes over |q> (x) |m>, q indexing mode a and m mode b"""

    amps: np.ndarray

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))


def split_state(state: FockExpansion, cfg: BeamSplitterConfig) -> TwoModeState:
    """Beam-splitter output for state (x) vacuum: amps[q][m] = c_{q+m} sqrt(C(q+m,q)) t^q r^m"""
    levels = state.truncation
    logs, mask = _half_log_binomials(levels)
    total = np.add.outer(np.arange(levels + 1), np.arange(levels + 1))
    coeffs = np.where(mask, state.padded(2 * levels)[total], 0.0)
    weights = np.exp(logs) * np.outer(_powers(cfg.t, levels), _powers(cfg.r, levels))
    two_mode = TwoModeState(coeffs * weights)

    drift = abs(two_mode.norm - 1.0)
    if drift > 1e-10:
        logger.warning(f"⚠️ beam-splitter output norm drifted by {drift:.2e}")
    return two_mode


# === Reduced Density Matrix ===

@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Reduced single-mode density matrix rho_a"""

    entries: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def eigenvalues(self) -> np.ndarray:
        return scipy.linalg.eigvalsh(self.entries)

    def purity(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2))

    def validate(self) -> bool:
        """Hermitian, unit trace and positive up to roundoff"""
        hermitian = np.max(np.abs(self.entries - self.entries.conj().T), initial=0.0) <= NORM_TOLERANCE
        unit_trace = abs(self.trace - 1.0) <= 1e-10
        lowest = float(np.min(self.eigenvalues()))
        positive = lowest >= -EIGEN_TOLERANCE
        if not positive:
            logger.warning(f"⚠️ reduced density matrix has eigenvalue {lowest:.3e}")
        return bool(hermitian and unit_trace and positive)


def reduce_a(two_mode: TwoModeState) -> DensityMatrix:
    """rho_a[q][s] = sum_m amps[q][m] conj(amps[s][m])"""
    amps = two_mode.amps
    rho = amps @ amps.conj().T
    # Symmetrize away the roundoff asymmetry of the product
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def purity(rho: DensityMatrix) -> float:
    return rho.purity()


def _clamp_entropy(value: float, where: str) -> float:
    clamped = min(max(value, 0.0), 1.0)
    if abs(clamped - value) > ENTROPY_CLAMP_TOLERANCE:
        logger.warning(f"⚠️ {where} linear entropy {value:.3e} clamped to [0, 1]")
    return clamped


def linear_entropy_matrix(rho: DensityMatrix) -> float:
    """S = 1 - Tr(rho^2), clamped to [0, 1]"""
    return _clamp_entropy(1.0 - rho.purity(), "partial-trace")


# === Series Path ===

@dataclass(frozen=True)
class EntropyEstimate:
    value: float
    converged: bool
    drift: float
    levels: int


def _series_value(coeffs: np.ndarray, cfg: BeamSplitterConfig) -> float:
    """
    1 - sum_{q,s,m,n} W[q,m] W*[s,m] W*[q,n] W[s,n] with
    W[q,m] = c_{q+m} sqrt(C(q+m,q)) |t|^q |r|^m; only |t|, |r| enter
    """
    levels = len(coeffs) - 1
    logs, mask = _half_log_binomials(levels)
    total = np.add.outer(np.arange(levels + 1), np.arange(levels + 1))
    padded = np.concatenate([coeffs, np.zeros(levels, dtype=complex)])
    magnitudes = np.outer(_powers(cfg.transmissivity, levels), _powers(cfg.reflectivity, levels)).real
    weights = np.where(mask, padded[total], 0.0) * np.exp(logs) * magnitudes
    quartic = np.einsum("qm,sm,qn,sn->", weights, weights.conj(), weights.conj(), weights, optimize=False)
    return _clamp_entropy(1.0 - float(quartic.real), "series")


def linear_entropy_series(table: RecurrenceTable, cfg: BeamSplitterConfig,
                          levels: Optional[int] = None) -> EntropyEstimate:
    """
    Linear entropy from the quadruple sum over the recurrence table

    The normalized coefficients c_n = I_n / (sqrt(e_n!) N) replace the
    raw 1/N^4 prefactor, which overflows at N = 40.

    Args:
        table: Recurrence solution; must extend CONVERGENCE_STEP levels past `levels`
        cfg: Beam splitter
        levels: Truncation of the sums (defaults to table.levels - CONVERGENCE_STEP)

    Returns:
        EntropyEstimate with the drift between `levels` and `levels + CONVERGENCE_STEP`
    """
    if levels is None:
        levels = table.levels - CONVERGENCE_STEP
    if levels < 0 or table.levels < levels + CONVERGENCE_STEP:
        raise ValueError(
            f"series entropy at N={levels} needs a table to N+{CONVERGENCE_STEP}, got N={table.levels}"
        )
    scaled = table.scaled_coefficients()
    value = _series_value(normalize(scaled[: levels + 1]).coeffs, cfg)
    extended = _series_value(normalize(scaled[: levels + CONVERGENCE_STEP + 1]).coeffs, cfg)
    drift = abs(extended - value)
    converged = drift <= CONVERGENCE_TOLERANCE
    if not converged:
        logger.warning(f"⚠️ series entropy drifted by {drift:.2e} between N={levels} and N={levels + CONVERGENCE_STEP}")
    return EntropyEstimate(value, converged, drift, levels)


def series_entropy_for(z: complex, gamma: complex, model: SpectrumModel, cfg: BeamSplitterConfig,
                       levels: int) -> EntropyEstimate:
    table = solve_recurrence(z, gamma, model, levels + CONVERGENCE_STEP)
    return linear_entropy_series(table, cfg, levels)


def matrix_entropy(state: FockExpansion, cfg: BeamSplitterConfig) -> float:
    """linear_entropy_matrix(reduce_a(split_state(state, cfg)))"""
    return linear_entropy_matrix(reduce_a(split_state(state, cfg)))


def matrix_entropy_for(z: complex, gamma: complex, model: SpectrumModel, cfg: BeamSplitterConfig,
                       levels: int) -> EntropyEstimate:
    """Partial-trace entropy at N with the same N + CONVERGENCE_STEP drift check as the series path"""
    value = matrix_entropy(build_state(z, gamma, model, levels), cfg)
    extended = matrix_entropy(build_state(z, gamma, model, levels + CONVERGENCE_STEP), cfg)
    drift = abs(extended - value)
    return EntropyEstimate(value, drift <= CONVERGENCE_TOLERANCE, drift, levels)


def theta_scan(state: FockExpansion, thetas: Sequence[float], phi: float = DEFAULT_PHI) -> np.ndarray:
    """Partial-trace entropy of one input over a set of beam-splitter angles"""
    return np.array([matrix_entropy(state, BeamSplitterConfig(float(theta), phi)) for theta in thetas])


# === Entropy Sweeps ===

@dataclass(frozen=True)
class SweepRow:
    model: str
    A: float
    B: float
    z: float
    gamma: complex
    entropy: float
    converged: bool
    method: str
    spot_check_drift: Optional[float] = None
    error: Optional[str] = None


def evaluate_entropy_point(task: Tuple) -> SweepRow:
    """One sweep point; numerical failures are recorded on the row, never raised"""
    model, z, gamma, cfg, levels, method, spot_check = task
    try:
        if method == "series":
            estimate = series_entropy_for(z, gamma, model, cfg, levels)
        else:
            estimate = matrix_entropy_for(z, gamma, model, cfg, levels)

        spot_drift = None
        if spot_check and method != "series":
            spot_drift = abs(series_entropy_for(z, gamma, model, cfg, levels).value - estimate.value)
            if spot_drift > SPOT_CHECK_TOLERANCE:
                logger.warning(f"⚠️ {model.label} z={z:g}: series and partial-trace entropy differ by {spot_drift:.2e}")

        return SweepRow(model.label, model.A, model.B, z, gamma, estimate.value,
                        estimate.converged, method, spot_drift)
    except (ValueError, ArithmeticError) as e:
        logger.error(f"❌ {model.label} z={z:g} gamma={gamma}: {e}")
        return SweepRow(model.label, model.A, model.B, z, gamma, float("nan"),
                        False, method, None, str(e))


def entropy_sweep(models: Sequence[SpectrumModel], z_grid: Sequence[float], gamma: complex,
                  cfg: BeamSplitterConfig, levels: int = DEFAULT_LEVELS, method: str = "matrix",
                  spot_check_every: int = SPOT_CHECK_EVERY, max_workers: int = 1) -> List[SweepRow]:
    """
    Linear entropy over models x z-grid, rows ordered model-major

    Args:
        models: Spectrum models
        z_grid: Real eigenvalues
        gamma: Squeezing parameter (0 for coherent inputs)
        cfg: Beam splitter
        levels: Truncation N
        method: "matrix" (partial trace) or "series" (quadruple sum)
        spot_check_every: Series-path cross-check on every n-th point (0 disables)
        max_workers: Worker processes; results are assembled in grid order

    Returns:
        One SweepRow per (model, z)
    """
    if method not in ("matrix", "series"):
        raise ValueError(f"unknown entropy method '{method}'")
    gamma = complex(gamma)
    points = [(model, float(z)) for model in models for z in z_grid]
    tasks = [
        (model, z, gamma, cfg, levels, method, spot_check_every > 0 and index % spot_check_every == 0)
        for index, (model, z) in enumerate(points)
    ]
    logger.info(f"Sweeping {len(tasks)} points ({len(models)} models, N={levels}, gamma={gamma}, method={method})")
    rows = run_ordered(evaluate_entropy_point, tasks, max_workers)

    unconverged = sum(1 for row in rows if not row.converged)
    if unconverged:
        logger.warning(f"⚠️ {unconverged}/{len(rows)} sweep points did not converge")
    return rows
