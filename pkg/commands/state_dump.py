#!/usr/bin/env python3
"""
State Dump Command
Handles: Fock coefficients of a single built state
"""

import logging
from typing import Any, Dict, List

from models import RunConfig
from observables import photon_statistics
from schema import STATE_COLUMNS
from states import build_state

logger = logging.getLogger(__name__)


class StateDumpCommand:
    """
    Dumps c_n of the state built from the first model at z = z-min
    """

    COLUMNS = STATE_COLUMNS

    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.state = None

    def reset(self):
        self.state = None

    def build_rows(self) -> List[Dict[str, Any]]:
        cfg = self.cfg
        if len(cfg.models) > 1:
            logger.warning(f"⚠️ state-dump uses the first model only ({cfg.models[0].label})")
        self.state = build_state(cfg.z_min, cfg.gamma, cfg.models[0], cfg.levels)
        return [
            {"n": n, "re": c.real, "im": c.imag, "prob": p}
            for n, (c, p) in enumerate(zip(self.state.coeffs, self.state.probabilities))
        ]

    def metadata(self) -> Dict[str, Any]:
        """Model, z and the truncation diagnostics of the dumped state"""
        model = self.cfg.models[0]
        mean_n, var_n = photon_statistics(self.state)
        return {
            "model": model.label,
            "z": self.cfg.z_min,
            "tail_weight": self.state.tail_weight,
            "converged": self.state.converged,
            "log_norm": self.state.log_norm,
            "mean_n": mean_n,
            "var_n": var_n,
        }

    def get_stats(self) -> Dict[str, int]:
        return {
            "levels": 0 if self.state is None else self.state.truncation + 1
        }
