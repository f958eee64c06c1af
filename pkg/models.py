#!/usr/bin/env python3
"""
Run configuration data model and figure presets
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import (
    DEFAULT_LEVELS,
    DEFAULT_LQ_LEVELS,
    DEFAULT_PHI,
    DEFAULT_THETA,
    PRESET_GAMMA,
    PRESET_X_RANGE,
    PRESET_X_STEPS,
    PRESET_Z_RANGE,
    PRESET_Z_STEPS,
)
from fock_core import HARMONIC, QUADRATIC, ModelKind, SpectrumError, SpectrumModel, make_spectrum
from observables import QuadratureConvention


class ConfigError(ValueError):
    """Raised for an invalid run configuration"""


class Command(str, Enum):
    DISPERSION = "dispersion"
    DENSITY = "density"
    ENTROPY_SWEEP = "entropy-sweep"
    STATE_DUMP = "state-dump"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


# === Figure Presets ===
# fig4 presets take their linear-quadratic (A, B) pairs from --model.
PRESETS: Dict[str, Dict] = {
    "fig1": {"command": Command.DISPERSION, "models": [HARMONIC, QUADRATIC], "gamma": 0.0,
             "levels": DEFAULT_LEVELS, "convention": QuadratureConvention.SQRT2},
    "fig2": {"command": Command.DENSITY, "models": [HARMONIC, QUADRATIC], "gamma": 0.0,
             "levels": DEFAULT_LEVELS, "z_steps": 7},
    "fig3": {"command": Command.ENTROPY_SWEEP, "models": [HARMONIC, QUADRATIC], "gamma": PRESET_GAMMA,
             "levels": DEFAULT_LEVELS},
    "fig4a": {"command": Command.ENTROPY_SWEEP, "models": [QUADRATIC], "gamma": 0.0,
              "levels": DEFAULT_LQ_LEVELS, "needs_lq": True},
    "fig4b": {"command": Command.ENTROPY_SWEEP, "models": [QUADRATIC], "gamma": PRESET_GAMMA,
              "levels": DEFAULT_LQ_LEVELS, "needs_lq": True},
}


def parse_model(token: str) -> SpectrumModel:
    """
    Parse a model token

    Args:
        token: "harmonic", "quadratic" or "lq:A,B"

    Returns:
        SpectrumModel
    """
    token = token.strip().lower()
    if token in ("harmonic", "quadratic"):
        return make_spectrum(token)
    if token.startswith("lq:"):
        try:
            a_text, b_text = token[3:].split(",")
            return make_spectrum(ModelKind.LINEAR_QUADRATIC, float(a_text), float(b_text))
        except SpectrumError as e:
            raise ConfigError(str(e)) from e
        except ValueError as e:
            raise ConfigError(f"model '{token}' must look like lq:A,B") from e
    raise ConfigError(f"unknown model '{token}' (expected harmonic, quadratic or lq:A,B)")


@dataclass(frozen=True)
class RunConfig:
    """Everything a command needs; echoed into every output header"""

    command: Command
    models: Tuple[SpectrumModel, ...] = (HARMONIC, QUADRATIC)
    z_min: float = PRESET_Z_RANGE[0]
    z_max: float = PRESET_Z_RANGE[1]
    z_steps: int = PRESET_Z_STEPS
    x_min: float = PRESET_X_RANGE[0]
    x_max: float = PRESET_X_RANGE[1]
    x_steps: int = PRESET_X_STEPS
    gamma: complex = 0.0
    levels: int = DEFAULT_LEVELS
    theta: float = DEFAULT_THETA
    phi: float = DEFAULT_PHI
    convention: QuadratureConvention = QuadratureConvention.SQRT2
    output_format: OutputFormat = OutputFormat.CSV
    output_path: Optional[str] = None
    preset: Optional[str] = None
    method: str = "matrix"
    workers: int = 1
    inject_fault: bool = False

    def validate(self) -> "RunConfig":
        if self.z_steps < 1:
            raise ConfigError(f"z steps must be >= 1, got {self.z_steps}")
        if self.z_min > self.z_max:
            raise ConfigError(f"z-min {self.z_min} exceeds z-max {self.z_max}")
        if self.x_steps < 2 or self.x_min >= self.x_max:
            raise ConfigError("x grid needs x-min < x-max and at least 2 steps")
        if self.levels < 1:
            raise ConfigError(f"levels must be >= 1, got {self.levels}")
        if abs(self.gamma) >= 1:
            raise ConfigError(f"|gamma| must be < 1, got {abs(self.gamma):g}")
        if not 0 <= self.theta <= np.pi:
            raise ConfigError(f"theta must lie in [0, pi], got {self.theta}")
        if not self.models:
            raise ConfigError("at least one model is required")
        if self.method not in ("matrix", "series"):
            raise ConfigError(f"method must be matrix or series, got {self.method}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        return self

    @property
    def z_grid(self) -> np.ndarray:
        return np.linspace(self.z_min, self.z_max, self.z_steps)

    @property
    def x_grid(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.x_steps)

    def header_items(self) -> List[Tuple[str, object]]:
        """Ordered key/value pairs for the output header line"""
        items = [
            ("command", self.command.value),
            ("preset", self.preset or "none"),
            ("models", ";".join(model.label for model in self.models)),
            ("A", ";".join(f"{model.A:g}" for model in self.models)),
            ("B", ";".join(f"{model.B:g}" for model in self.models)),
            ("z_min", self.z_min),
            ("z_max", self.z_max),
            ("z_steps", self.z_steps),
            ("gamma", complex(self.gamma)),
            ("N", self.levels),
            ("theta", self.theta),
            ("phi", self.phi),
            ("convention", self.convention.value),
        ]
        if self.command is Command.DENSITY:
            items += [("x_min", self.x_min), ("x_max", self.x_max), ("x_steps", self.x_steps)]
        if self.command is Command.ENTROPY_SWEEP:
            items.append(("method", self.method))
        return items


def apply_preset(name: str, overrides: Dict) -> Dict:
    """
    Merge a preset under explicit overrides

    Args:
        name: Preset name (fig1, fig2, fig3, fig4a, fig4b)
        overrides: Values given explicitly on the command line (None = not given)

    Returns:
        Keyword arguments for RunConfig
    """
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}' (choose from {', '.join(PRESETS)})")
    preset = dict(PRESETS[name])
    needs_lq = preset.pop("needs_lq", False)
    given = {key: value for key, value in overrides.items() if value is not None}

    if "command" in given and given["command"] is not preset["command"]:
        raise ConfigError(f"preset {name} produces '{preset['command'].value}', not '{given['command'].value}'")

    user_models = list(given.pop("models", []))
    models = list(preset.pop("models"))
    if needs_lq:
        if not any(model.kind is ModelKind.LINEAR_QUADRATIC for model in user_models):
            raise ConfigError(f"preset {name} needs at least one --model lq:A,B")
        models += [model for model in user_models if model not in models]
    elif user_models:
        models = user_models

    merged = {**preset, "models": tuple(models), "preset": name}
    merged.update(given)
    return merged
